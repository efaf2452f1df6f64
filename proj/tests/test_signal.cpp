#include <cmath>
#include <complex>
#include <cstdio>
#include <filesystem>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "sketchlab/signal.hpp"

using namespace sketchlab;

namespace {
std::string tmp_path(const char* name) {
  return (std::filesystem::temp_directory_path() / name).string();
}
}  // namespace

TEST_CASE("lp_norm basics") {
  const std::vector<double> zeros{0, 0, 0, 0};
  CHECK(lp_norm(zeros, 2.0) == 0.0);
  const std::vector<double> pyth{3, 4};
  CHECK(lp_norm(pyth, 2.0) == doctest::Approx(5.0).epsilon(1e-15));
  const std::vector<double> ones{1, 1, 1, 1};
  CHECK(lp_norm(ones, 1.0) == doctest::Approx(4.0).epsilon(1e-15));
  CHECK_THROWS_AS((void)lp_norm(ones, 0.0), std::invalid_argument);
  CHECK_THROWS_AS((void)lp_norm(ones, 2.5), std::invalid_argument);
  const std::vector<Cplx> c{{0, 1}, {0, -1}};
  CHECK(lp_norm(c, 2.0) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
}

TEST_CASE("head_set selection and tie-breaks") {
  const std::vector<double> x{3, 1, 0, 2};
  CHECK(head_set(x, 2) == std::vector<std::size_t>{0, 3});
  CHECK(head_set(x, 0).empty());
  const std::vector<double> ties{5, 5, 5};
  CHECK(head_set(ties, 1) == std::vector<std::size_t>{0});
  CHECK(head_set(ties, 7) == std::vector<std::size_t>{0, 1, 2});  // clamps

  // nesting under the fixed tie-break rule
  const std::vector<double> y{2, -7, 2, 0, 7};
  std::vector<std::size_t> prev;
  for (std::size_t k = 0; k <= y.size(); ++k) {
    const auto h = head_set(y, k);
    CHECK(h.size() == k);
    for (const std::size_t i : prev)
      CHECK(std::find(h.begin(), h.end(), i) != h.end());
    prev = h;
  }
}

TEST_CASE("tail_norm and the head/tail energy split") {
  const std::vector<double> x{3, 1, 0, 2};
  CHECK(tail_norm(x, 1, 2.0) == doctest::Approx(std::sqrt(5.0)).epsilon(1e-15));
  CHECK(tail_norm(x, 0, 2.0) == doctest::Approx(lp_norm(x, 2.0)).epsilon(1e-15));
  CHECK(tail_norm(x, x.size(), 2.0) == 0.0);

  const std::vector<double> y{0.3, -2.5, 4, 1e-3, 9, -9, 0.25};
  double prev = 1e300;
  for (std::size_t k = 0; k <= y.size(); ++k) {
    const double t = tail_norm(y, k, 2.0);
    CHECK(t <= prev + 1e-12);  // non-increasing in k
    prev = t;
    double head_sq = 0.0;
    for (const std::size_t i : head_set(y, k)) head_sq += y[i] * y[i];
    const double total = lp_norm(y, 2.0);
    CHECK(t * t + head_sq == doctest::Approx(total * total).epsilon(1e-12));
  }
}

TEST_CASE("fourier_err equals the complex l2 tail") {
  const std::vector<Cplx> sparse{{5, 0}, {0, 0}, {0, 0}, {0, -2}};
  CHECK(fourier_err(sparse, 2) == 0.0);
  const std::vector<Cplx> x{{3, 0}, {1, 0}, {0, 0}, {2, 0}};
  CHECK(fourier_err(x, 1) == doctest::Approx(std::sqrt(5.0)).epsilon(1e-15));
  const std::vector<Cplx> c{{0, 1}, {0, -1}};
  CHECK(fourier_err(c, 0) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
}

TEST_CASE("sparse approximations store sorted unique entries") {
  SparseApprox a;
  a.n = 10;
  a.set(7, 1.5);
  a.set(2, -3.0);
  a.set(7, 2.5);  // overwrite
  CHECK(a.entries.size() == 2);
  CHECK(a.value_at(2) == -3.0);
  CHECK(a.value_at(7) == 2.5);
  CHECK(a.value_at(3) == 0.0);
  CHECK(a.support() == std::vector<std::size_t>{2, 7});

  SparseSpectrum s;
  s.n = 8;
  s.set(5, Cplx{1, 2});
  CHECK(s.value_at(5) == Cplx{1, 2});
  CHECK(s.value_at(0) == Cplx{0, 0});
}

TEST_CASE("l2_err measures full-vector distance") {
  const std::vector<double> x{1, 0, 2, 0};
  SparseApprox a;
  a.n = 4;
  a.set(0, 1.0);
  a.set(2, 2.0);
  CHECK(l2_err(x, a) == 0.0);
  a.set(2, 0.0);  // explicit zero entry: estimate 0 at index 2
  CHECK(l2_err(x, a) == doctest::Approx(2.0).epsilon(1e-15));
  const std::vector<double> wrong{1, 0};
  CHECK_THROWS_AS((void)l2_err(wrong, a), std::invalid_argument);
}

TEST_CASE("lower_median picks the smaller middle element") {
  const std::vector<double> odd{5, 1, 3};
  CHECK(lower_median(odd) == 3.0);
  const std::vector<double> even{4, 1, 3, 2};
  CHECK(lower_median(even) == 2.0);
  const std::vector<double> empty;
  CHECK_THROWS_AS((void)lower_median(empty), std::invalid_argument);
}

TEST_CASE("validate_support rejects malformed sets") {
  const std::vector<std::size_t> ok{1, 4, 9};
  CHECK_NOTHROW(validate_support(ok, 10));
  const std::vector<std::size_t> unsorted{4, 1};
  CHECK_THROWS_AS(validate_support(unsorted, 10), std::invalid_argument);
  const std::vector<std::size_t> dup{1, 1};
  CHECK_THROWS_AS(validate_support(dup, 10), std::invalid_argument);
  const std::vector<std::size_t> oob{1, 10};
  CHECK_THROWS_AS(validate_support(oob, 10), std::invalid_argument);
}

TEST_CASE("signal files round-trip in text and binary") {
  const std::vector<double> x{1.5, -2.25, 0.0, 1e-17, 3e200};
  const std::string txt = tmp_path("sketchlab_sig.txt");
  const std::string bin = tmp_path("sketchlab_sig.f64");
  save_real_signal(txt, x);
  save_real_signal(bin, x);
  CHECK(load_real_signal(txt) == x);
  CHECK(load_real_signal(bin) == x);

  const std::vector<Cplx> c{{1.5, -0.25}, {0, 0}, {-3e-5, 7}};
  const std::string ctxt = tmp_path("sketchlab_sig_c.txt");
  const std::string cbin = tmp_path("sketchlab_sig.c64");
  save_complex_signal(ctxt, c);
  save_complex_signal(cbin, c);
  CHECK(load_complex_signal(ctxt) == c);
  CHECK(load_complex_signal(cbin) == c);

  const std::vector<std::size_t> s{0, 3, 17};
  const std::string sp = tmp_path("sketchlab_support.txt");
  save_support(sp, s);
  CHECK(load_support(sp) == s);

  CHECK_THROWS_AS((void)load_real_signal(tmp_path("sketchlab_missing.txt")),
                  std::runtime_error);
  for (const auto& p : {txt, bin, ctxt, cbin, sp}) std::remove(p.c_str());
}
