#pragma once

#include "chainspectra/kernels.hpp"

namespace chainspectra::kernels::detail {

const KernelTable& scalar_table() noexcept;

#if defined(CHAIN_SPECTRA_HAVE_AVX2)
const KernelTable& avx2_table() noexcept;
#endif

}  // namespace chainspectra::kernels::detail
