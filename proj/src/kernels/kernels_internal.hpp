#pragma once

#include "wlab/kernels.hpp"

namespace wlab::kernels::detail {

#if defined(WLAB_HAVE_AVX2_KERNELS)
const KernelTable& avx2_table();
#endif

}  // namespace wlab::kernels::detail
