#include "krylov/state_io.hpp"

#include <array>
#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>
#include <stdexcept>

namespace krylov {

namespace {

constexpr std::array<char, 5> kMagic{'K', 'R', 'Y', 'V', '1'};

void put_u64(std::ostream& out, std::uint64_t v) {
  std::array<char, 8> bytes{};
  for (std::size_t i = 0; i < 8; ++i) bytes[i] = static_cast<char>((v >> (8 * i)) & 0xFFU);
  out.write(bytes.data(), bytes.size());
}

std::uint64_t get_u64(std::istream& in) {
  std::array<unsigned char, 8> bytes{};
  in.read(reinterpret_cast<char*>(bytes.data()), bytes.size());
  if (!in) throw std::runtime_error("read_state: truncated file");
  std::uint64_t v = 0;
  for (std::size_t i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(bytes[i]) << (8 * i);
  return v;
}

void put_f64(std::ostream& out, double x) { put_u64(out, std::bit_cast<std::uint64_t>(x)); }

double get_f64(std::istream& in) { return std::bit_cast<double>(get_u64(in)); }

}  // namespace

void write_state(std::ostream& out, const ComplexState& state) {
  out.write(kMagic.data(), kMagic.size());
  put_u64(out, state.dim());
  for (std::size_t i = 0; i < state.dim(); ++i) {
    put_f64(out, state[i].real());
    put_f64(out, state[i].imag());
  }
  if (!out) throw std::runtime_error("write_state: write failed");
}

ComplexState read_state(std::istream& in) {
  std::array<char, 5> magic{};
  in.read(magic.data(), magic.size());
  if (!in || magic != kMagic) throw std::runtime_error("read_state: not a KRYV1 state file");
  const std::uint64_t dim = get_u64(in);
  if (dim == 0) throw std::runtime_error("read_state: zero dimension");
  CVector v(static_cast<Eigen::Index>(dim));
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    const double re = get_f64(in);
    v[i] = complex_t(re, get_f64(in));
  }
  return ComplexState(std::move(v));
}

void write_state_file(const std::filesystem::path& path, const ComplexState& state) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  write_state(out, state);
}

ComplexState read_state_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  return read_state(in);
}

}  // namespace krylov
