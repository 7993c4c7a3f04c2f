#ifndef HEATCP_NOISE_HPP
#define HEATCP_NOISE_HPP

#include <cstdint>

namespace heatcp::detail {

// Fills z1[0..count), z2[0..count) with the standard-normal pair stream of
// mode k at steps j0..j0+count-1 (the kSpdeModes stream).  Batched so the
// log/sin/cos transforms vectorize; every consumer of the mode noise must
// go through this routine so replayed paths match bit for bit.
void fill_mode_noise(std::uint64_t seed, std::uint32_t mode, std::int64_t j0,
                     int count, double* z1, double* z2);

}  // namespace heatcp::detail

#endif
