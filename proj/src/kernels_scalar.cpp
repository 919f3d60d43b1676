#include "dnacloud/kernels.hpp"

#include "kernels_impl.hpp"

namespace dnacloud::kernels {

const Ops& scalar() {
    static const Ops ops{
        "scalar",
        &detail::trits_to_bases_loop,
        &detail::bases_to_trits_loop,
        &detail::find_adjacent_equal_loop,
        &detail::count_gc_loop,
        &detail::vote_accumulate_loop,
        &detail::vote_resolve_loop,
        &detail::ascii_to_codes_loop,
        &detail::codes_to_ascii_loop,
    };
    return ops;
}

}  // namespace dnacloud::kernels
