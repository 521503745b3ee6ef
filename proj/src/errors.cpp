#include "vkernel/errors.hpp"

namespace vk {

const char* errc_name(Errc code) {
    switch (code) {
        case Errc::syntax_error: return "SyntaxError";
        case Errc::index_out_of_range: return "IndexOutOfRange";
        case Errc::mixed_space: return "MixedSpace";
        case Errc::space_mismatch: return "SpaceMismatch";
        case Errc::not_polynomial_in_jets: return "NotPolynomialInJets";
        case Errc::not_horizontal: return "NotHorizontal";
        case Errc::not_in_kernel_candidate: return "NotInKernelCandidate";
        case Errc::not_closed: return "NotClosed";
        case Errc::not_polynomial: return "NotPolynomial";
        case Errc::bad_arity: return "BadArity";
        case Errc::eval_domain: return "EvalDomain";
        case Errc::internal: return "Internal";
    }
    return "Unknown";
}

}  // namespace vk
