#pragma once

#include <cstdint>

#include "qdist/channel.hpp"

namespace qdist {

/// Best output trace distance over seeded random pure inputs on the channel
/// input space entangled with a reference of equal dimension — a lower
/// bound on δ(e1, e2) from the stabilized-norm definition. Each sample
/// derives its generator from (seed, index), so the result is identical for
/// any thread count; the OpenMP variant parallelizes over samples.
double sampled_distinguishability_bound(const QuantumChannel& e1, const QuantumChannel& e2,
                                        int samples, std::uint64_t seed);
double sampled_distinguishability_bound_serial(const QuantumChannel& e1,
                                               const QuantumChannel& e2, int samples,
                                               std::uint64_t seed);

}  // namespace qdist
