#include "sketchlab/signal.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace sketchlab {

namespace {

void check_p(double p) {
  if (!(p > 0.0) || p > 2.0)
    throw std::invalid_argument("lp_norm: p must lie in (0, 2]");
}

template <typename T>
double lp_norm_impl(std::span<const T> x, double p) {
  check_p(p);
  double acc = 0.0;
  if (p == 2.0) {
    for (const T& v : x) {
      const double a = std::abs(v);
      acc += a * a;
    }
    return std::sqrt(acc);
  }
  if (p == 1.0) {
    for (const T& v : x) acc += std::abs(v);
    return acc;
  }
  for (const T& v : x) acc += std::pow(std::abs(v), p);
  return std::pow(acc, 1.0 / p);
}

// Indices ordered by (magnitude desc, index asc); the first k are the head.
template <typename T>
std::vector<std::size_t> ranked_indices(std::span<const T> x) {
  std::vector<std::size_t> idx(x.size());
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
    const double ma = std::abs(x[a]), mb = std::abs(x[b]);
    if (ma != mb) return ma > mb;
    return a < b;
  });
  return idx;
}

template <typename T>
std::vector<std::size_t> head_set_impl(std::span<const T> x, std::size_t k) {
  k = std::min(k, x.size());
  auto idx = ranked_indices(x);
  idx.resize(k);
  std::sort(idx.begin(), idx.end());
  return idx;
}

template <typename T>
double tail_norm_impl(std::span<const T> x, std::size_t k, double p) {
  check_p(p);
  if (k >= x.size()) return 0.0;
  auto idx = ranked_indices(x);
  double acc = 0.0;
  if (p == 2.0) {
    for (std::size_t r = k; r < idx.size(); ++r) {
      const double a = std::abs(x[idx[r]]);
      acc += a * a;
    }
    return std::sqrt(acc);
  }
  for (std::size_t r = k; r < idx.size(); ++r)
    acc += std::pow(std::abs(x[idx[r]]), p);
  return std::pow(acc, 1.0 / p);
}

template <typename E>
typename std::vector<std::pair<std::size_t, E>>::const_iterator find_entry(
    const std::vector<std::pair<std::size_t, E>>& entries, std::size_t i) {
  auto it = std::lower_bound(
      entries.begin(), entries.end(), i,
      [](const auto& e, std::size_t key) { return e.first < key; });
  return it;
}

}  // namespace

double lp_norm(std::span<const double> x, double p) { return lp_norm_impl(x, p); }
double lp_norm(std::span<const Cplx> x, double p) { return lp_norm_impl(x, p); }

std::vector<std::size_t> head_set(std::span<const double> x, std::size_t k) {
  return head_set_impl(x, k);
}
std::vector<std::size_t> head_set(std::span<const Cplx> x, std::size_t k) {
  return head_set_impl(x, k);
}

double tail_norm(std::span<const double> x, std::size_t k, double p) {
  return tail_norm_impl(x, k, p);
}
double tail_norm(std::span<const Cplx> x, std::size_t k, double p) {
  return tail_norm_impl(x, k, p);
}

double fourier_err(std::span<const Cplx> xhat, std::size_t k) {
  return tail_norm(xhat, k, 2.0);
}

double SparseApprox::value_at(std::size_t i) const {
  auto it = find_entry(entries, i);
  return (it != entries.end() && it->first == i) ? it->second : 0.0;
}

void SparseApprox::set(std::size_t i, double v) {
  auto it = std::lower_bound(
      entries.begin(), entries.end(), i,
      [](const auto& e, std::size_t key) { return e.first < key; });
  if (it != entries.end() && it->first == i)
    it->second = v;
  else
    entries.insert(it, {i, v});
}

std::vector<std::size_t> SparseApprox::support() const {
  std::vector<std::size_t> s;
  s.reserve(entries.size());
  for (const auto& e : entries) s.push_back(e.first);
  return s;
}

Cplx SparseSpectrum::value_at(std::size_t i) const {
  auto it = find_entry(entries, i);
  return (it != entries.end() && it->first == i) ? it->second : Cplx{0.0, 0.0};
}

void SparseSpectrum::set(std::size_t i, Cplx v) {
  auto it = std::lower_bound(
      entries.begin(), entries.end(), i,
      [](const auto& e, std::size_t key) { return e.first < key; });
  if (it != entries.end() && it->first == i)
    it->second = v;
  else
    entries.insert(it, {i, v});
}

std::vector<std::size_t> SparseSpectrum::support() const {
  std::vector<std::size_t> s;
  s.reserve(entries.size());
  for (const auto& e : entries) s.push_back(e.first);
  return s;
}

double l2_err(std::span<const double> x, const SparseApprox& approx) {
  if (approx.n != x.size())
    throw std::invalid_argument("l2_err: dimension mismatch");
  double acc = 0.0;
  auto it = approx.entries.begin();
  for (std::size_t i = 0; i < x.size(); ++i) {
    double a = x[i];
    if (it != approx.entries.end() && it->first == i) {
      a -= it->second;
      ++it;
    }
    acc += a * a;
  }
  return std::sqrt(acc);
}

double l2_err_on(std::span<const Cplx> xhat, const SparseSpectrum& approx,
                 std::span<const std::size_t> s) {
  validate_support(s, xhat.size());
  if (approx.n != xhat.size())
    throw std::invalid_argument("l2_err_on: dimension mismatch");
  double acc = 0.0;
  for (std::size_t i : s) {
    const double a = std::abs(approx.value_at(i) - xhat[i]);
    acc += a * a;
  }
  return std::sqrt(acc);
}

double lower_median(std::span<const double> v) {
  if (v.empty()) throw std::invalid_argument("lower_median: empty input");
  std::vector<double> tmp(v.begin(), v.end());
  const std::size_t rank = (tmp.size() - 1) / 2;
  std::nth_element(tmp.begin(), tmp.begin() + static_cast<std::ptrdiff_t>(rank),
                   tmp.end());
  return tmp[rank];
}

void validate_support(std::span<const std::size_t> s, std::size_t n) {
  for (std::size_t r = 0; r < s.size(); ++r) {
    if (s[r] >= n)
      throw std::invalid_argument("support: index out of range");
    if (r > 0 && s[r] <= s[r - 1])
      throw std::invalid_argument("support: indices must be sorted and unique");
  }
}

// ---------- file I/O ----------

namespace {

bool has_suffix(const std::string& s, const std::string& suf) {
  return s.size() >= suf.size() &&
         s.compare(s.size() - suf.size(), suf.size(), suf) == 0;
}

std::uint64_t read_binary_header(std::ifstream& in, const std::string& path) {
  std::uint64_t count = 0;
  in.read(reinterpret_cast<char*>(&count), sizeof(count));
  if (!in) throw std::runtime_error("truncated binary signal file: " + path);
  return count;
}

std::vector<double> read_binary_doubles(const std::string& path,
                                        std::size_t per_element) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open signal file: " + path);
  const std::uint64_t count = read_binary_header(in, path);
  std::vector<double> vals(count * per_element);
  in.read(reinterpret_cast<char*>(vals.data()),
          static_cast<std::streamsize>(vals.size() * sizeof(double)));
  if (!in) throw std::runtime_error("truncated binary signal file: " + path);
  return vals;
}

void write_binary_doubles(const std::string& path, std::uint64_t count,
                          std::span<const double> vals) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write signal file: " + path);
  out.write(reinterpret_cast<const char*>(&count), sizeof(count));
  out.write(reinterpret_cast<const char*>(vals.data()),
            static_cast<std::streamsize>(vals.size() * sizeof(double)));
  if (!out) throw std::runtime_error("short write: " + path);
}

std::vector<std::string> read_lines(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open file: " + path);
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) {
    // tolerate trailing \r and blank lines
    while (!line.empty() && (line.back() == '\r' || line.back() == ' '))
      line.pop_back();
    if (!line.empty()) lines.push_back(line);
  }
  return lines;
}

}  // namespace

std::vector<double> load_real_signal(const std::string& path) {
  if (has_suffix(path, ".f64")) return read_binary_doubles(path, 1);
  std::vector<double> x;
  for (const auto& line : read_lines(path)) {
    std::size_t pos = 0;
    x.push_back(std::stod(line, &pos));
  }
  return x;
}

std::vector<Cplx> load_complex_signal(const std::string& path) {
  if (has_suffix(path, ".c64")) {
    auto vals = read_binary_doubles(path, 2);
    std::vector<Cplx> x(vals.size() / 2);
    for (std::size_t i = 0; i < x.size(); ++i)
      x[i] = {vals[2 * i], vals[2 * i + 1]};
    return x;
  }
  std::vector<Cplx> x;
  for (const auto& line : read_lines(path)) {
    const auto comma = line.find(',');
    if (comma == std::string::npos)
      throw std::runtime_error("complex signal line missing ',': " + line);
    x.emplace_back(std::stod(line.substr(0, comma)),
                   std::stod(line.substr(comma + 1)));
  }
  return x;
}

void save_real_signal(const std::string& path, std::span<const double> x) {
  if (has_suffix(path, ".f64")) {
    write_binary_doubles(path, x.size(), x);
    return;
  }
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write signal file: " + path);
  out.precision(17);
  for (double v : x) out << v << '\n';
}

void save_complex_signal(const std::string& path, std::span<const Cplx> x) {
  if (has_suffix(path, ".c64")) {
    std::vector<double> vals(2 * x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
      vals[2 * i] = x[i].real();
      vals[2 * i + 1] = x[i].imag();
    }
    write_binary_doubles(path, x.size(), vals);
    return;
  }
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write signal file: " + path);
  out.precision(17);
  for (const Cplx& v : x) out << v.real() << ',' << v.imag() << '\n';
}

std::vector<std::size_t> load_support(const std::string& path) {
  std::vector<std::size_t> s;
  for (const auto& line : read_lines(path))
    s.push_back(static_cast<std::size_t>(std::stoull(line)));
  return s;
}

void save_support(const std::string& path, std::span<const std::size_t> s) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write support file: " + path);
  for (std::size_t i : s) out << i << '\n';
}

}  // namespace sketchlab
