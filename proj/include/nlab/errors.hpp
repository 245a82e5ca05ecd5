#pragma once

#include <stdexcept>
#include <string>

namespace nlab {

// Base class for all library errors.
struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct non_unit_generator : error { using error::error; };
struct char_mismatch : error { using error::error; };
struct zero_polynomial : error { using error::error; };
struct non_square_matrix : error { using error::error; };
struct not_monic : error { using error::error; };
struct bad_modulus : error { using error::error; };
struct non_unit : error { using error::error; };
struct order_mismatch : error { using error::error; };
struct ring_too_large : error { using error::error; };
struct action_not_automorphism : error { using error::error; };
struct action_order_mismatch : error { using error::error; };
struct bad_index : error { using error::error; };
struct search_budget_exceeded : error { using error::error; };
struct rank_mismatch : error { using error::error; };
struct not_generating : error { using error::error; };
struct nu_not_nilpotent : error { using error::error; };
struct bad_action : error { using error::error; };
struct singular_action : error { using error::error; };
struct module_not_cyclic : error { using error::error; };
struct spec_parse_error : error { using error::error; };

} // namespace nlab
