#pragma once

#include <complex>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "dglab/field.hpp"

namespace dglab {

// DGF1: "DGF1", u32 N, then 2N+1 (re, im) f64 pairs for k = -N..N, little-endian.
void write_dgf1(std::ostream& os, const RealCircleField& f);
void write_dgf1(const std::filesystem::path& path, const RealCircleField& f);
RealCircleField read_dgf1(std::istream& is);
RealCircleField read_dgf1(const std::filesystem::path& path);

// EIG1: "EIG1", u32 K, K (re, im) f64 pairs for eta_1..eta_K, then lambda as one pair.
void write_eig1(std::ostream& os, const std::vector<cplx>& eta, cplx lambda);
void write_eig1(const std::filesystem::path& path, const std::vector<cplx>& eta, cplx lambda);
void read_eig1(std::istream& is, std::vector<cplx>& eta, cplx& lambda);

// 17 significant digits (printf "%.17g"), enough to round-trip any double.
std::string format_double(double v);

class CsvWriter {
 public:
  CsvWriter(std::ostream& os, const std::vector<std::string>& header);
  void row(const std::vector<double>& values);

 private:
  std::ostream& os_;
  std::size_t columns_;
};

}  // namespace dglab
