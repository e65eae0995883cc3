#pragma once

#include <optional>
#include <random>

#include "tvz/cover.hpp"

namespace tvz {

// Draws a random valid weighted cover: a random target tree with six branch
// legs, expansions determined by leg parity, preimage structure forced by
// local Riemann-Hurwitz, random weights of total 3..5 and an occasional
// marking. Returns nullopt when the draw fails validation (callers loop).
std::optional<TropCover> sample_cover(std::mt19937_64& rng);

}  // namespace tvz
