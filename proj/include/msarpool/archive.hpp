#pragma once

#include <string>

#include "msarpool/gibbs.hpp"

namespace msarpool {

// Versioned little-endian binary archive of a draw set. Round-trips
// bit-exactly: save followed by load reproduces every double verbatim.
void save_draws(const PosteriorDraws& draws, const std::string& path);
PosteriorDraws load_draws(const std::string& path);

}  // namespace msarpool
