#include "dtqw/kernels.hpp"
#include "kernel_group.hpp"

namespace dtqw::kernels {

namespace {
constexpr Index kParallelThreshold = Index{1} << 12;
}

void apply_parallel(std::span<Complex> amps, const GatePlan& plan) {
  const long long groups = static_cast<long long>(amps.size() / static_cast<Index>(plan.dim));
  Complex* data = amps.data();

  #pragma omp parallel for schedule(static) if (amps.size() > kParallelThreshold)
  for (long long g = 0; g < groups; ++g) apply_group(data, plan, static_cast<Index>(g));
}

}  // namespace dtqw::kernels
