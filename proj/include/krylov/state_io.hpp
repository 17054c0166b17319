#pragma once

#include <filesystem>
#include <iosfwd>

#include "krylov/state.hpp"

namespace krylov {

// KRYV1 state file: the 5 ASCII bytes "KRYV1", the dimension as a
// little-endian u64, then dim (re, im) pairs of little-endian IEEE-754 f64.

void write_state(std::ostream& out, const ComplexState& state);
/// Throws std::runtime_error on a bad magic, a zero dimension or truncation.
ComplexState read_state(std::istream& in);

void write_state_file(const std::filesystem::path& path, const ComplexState& state);
ComplexState read_state_file(const std::filesystem::path& path);

}  // namespace krylov
