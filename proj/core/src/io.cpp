#include "dglab/io.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>

#include "dglab/errors.hpp"

namespace dglab {

namespace {

template <class T>
void put_le(std::ostream& os, T v) {
  unsigned char b[sizeof(T)];
  std::memcpy(b, &v, sizeof(T));
  if constexpr (std::endian::native == std::endian::big) std::reverse(b, b + sizeof(T));
  os.write(reinterpret_cast<const char*>(b), sizeof(T));
}

template <class T>
T get_le(std::istream& is) {
  unsigned char b[sizeof(T)];
  if (!is.read(reinterpret_cast<char*>(b), sizeof(T))) throw InputError("truncated binary input");
  if constexpr (std::endian::native == std::endian::big) std::reverse(b, b + sizeof(T));
  T v;
  std::memcpy(&v, b, sizeof(T));
  return v;
}

void put_cplx(std::ostream& os, cplx v) {
  put_le<double>(os, v.real());
  put_le<double>(os, v.imag());
}

cplx get_cplx(std::istream& is) {
  const double re = get_le<double>(is);
  const double im = get_le<double>(is);
  return {re, im};
}

void expect_magic(std::istream& is, const char* magic) {
  char m[4];
  if (!is.read(m, 4) || std::memcmp(m, magic, 4) != 0)
    throw InputError(std::string("bad magic, expected ") + magic);
}

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw InputError("cannot open " + path.string() + " for writing");
  return os;
}

}  // namespace

void write_dgf1(std::ostream& os, const RealCircleField& f) {
  const int N = f.max_mode();
  os.write("DGF1", 4);
  put_le<std::uint32_t>(os, static_cast<std::uint32_t>(N));
  for (int k = -N; k <= N; ++k) put_cplx(os, f[k]);
  if (!os) throw InputError("write failed");
}

void write_dgf1(const std::filesystem::path& path, const RealCircleField& f) {
  auto os = open_out(path);
  write_dgf1(os, f);
}

RealCircleField read_dgf1(std::istream& is) {
  expect_magic(is, "DGF1");
  const auto N = get_le<std::uint32_t>(is);
  if (N > (1u << 26)) throw InputError("implausible max mode in DGF1 header");
  std::vector<cplx> c(2 * static_cast<std::size_t>(N) + 1);
  for (auto& v : c) v = get_cplx(is);
  if (is.peek() != std::char_traits<char>::eof()) throw InputError("trailing bytes after DGF1 payload");
  return RealCircleField::from_symmetric(c);
}

RealCircleField read_dgf1(const std::filesystem::path& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw InputError("cannot open " + path.string());
  return read_dgf1(is);
}

void write_eig1(std::ostream& os, const std::vector<cplx>& eta, cplx lambda) {
  os.write("EIG1", 4);
  put_le<std::uint32_t>(os, static_cast<std::uint32_t>(eta.size()));
  for (const auto& v : eta) put_cplx(os, v);
  put_cplx(os, lambda);
  if (!os) throw InputError("write failed");
}

void write_eig1(const std::filesystem::path& path, const std::vector<cplx>& eta, cplx lambda) {
  auto os = open_out(path);
  write_eig1(os, eta, lambda);
}

void read_eig1(std::istream& is, std::vector<cplx>& eta, cplx& lambda) {
  expect_magic(is, "EIG1");
  const auto K = get_le<std::uint32_t>(is);
  if (K > (1u << 28)) throw InputError("implausible length in EIG1 header");
  eta.resize(K);
  for (auto& v : eta) v = get_cplx(is);
  lambda = get_cplx(is);
}

std::string format_double(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

CsvWriter::CsvWriter(std::ostream& os, const std::vector<std::string>& header)
    : os_(os), columns_(header.size()) {
  for (std::size_t i = 0; i < header.size(); ++i) os_ << (i ? "," : "") << header[i];
  os_ << '\n';
}

void CsvWriter::row(const std::vector<double>& values) {
  if (values.size() != columns_) throw ParameterError("CSV row width does not match header");
  for (std::size_t i = 0; i < values.size(); ++i) os_ << (i ? "," : "") << format_double(values[i]);
  os_ << '\n';
}

}  // namespace dglab
