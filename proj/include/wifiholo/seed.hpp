#pragma once

#include <cstdint>
#include <string_view>

namespace wifiholo {

std::uint64_t splitmix64(std::uint64_t x);

// Per-stage seed: master seed, stage name and index hashed together.
std::uint64_t derive_seed(std::uint64_t master, std::string_view stage, std::uint64_t index = 0);

}  // namespace wifiholo
