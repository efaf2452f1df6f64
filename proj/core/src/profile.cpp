#include "sketchlab/profile.hpp"

#include <stdexcept>

namespace sketchlab {

namespace {

struct FieldRef {
  const char* key;
  double ConstantProfile::*member;
};

constexpr FieldRef kFields[] = {
    {"tail_c0", &ConstantProfile::tail_c0},
    {"tail_m_mult", &ConstantProfile::tail_m_mult},
    {"tail_alpha", &ConstantProfile::tail_alpha},
    {"tail_beta", &ConstantProfile::tail_beta},
    {"forest_ch", &ConstantProfile::forest_ch},
    {"forest_cr", &ConstantProfile::forest_cr},
    {"forest_cb", &ConstantProfile::forest_cb},
    {"forest_cl", &ConstantProfile::forest_cl},
    {"forest_eta", &ConstantProfile::forest_eta},
    {"forest_zeta", &ConstantProfile::forest_zeta},
    {"prune_cr", &ConstantProfile::prune_cr},
    {"prune_cb", &ConstantProfile::prune_cb},
    {"prune_cg", &ConstantProfile::prune_cg},
    {"prune_cl", &ConstantProfile::prune_cl},
    {"prune_beta", &ConstantProfile::prune_beta},
    {"prune_alpha", &ConstantProfile::prune_alpha},
    {"sq_c", &ConstantProfile::sq_c},
    {"sq_gamma", &ConstantProfile::sq_gamma},
    {"fourier_c", &ConstantProfile::fourier_c},
    {"fourier_gamma", &ConstantProfile::fourier_gamma},
    {"fourier_alpha_div", &ConstantProfile::fourier_alpha_div},
    {"fourier_alpha_pow", &ConstantProfile::fourier_alpha_pow},
};

}  // namespace

ConstantProfile ConstantProfile::desk() {
  ConstantProfile p;  // defaults are the desk profile
  p.name = "desk";
  return p;
}

ConstantProfile ConstantProfile::paper() {
  ConstantProfile p;
  p.name = "paper";
  p.tail_c0 = 1000.0;
  p.tail_m_mult = 8.0;
  p.tail_alpha = 0.05;
  p.tail_beta = 20.0;
  p.forest_ch = 4.0;
  p.forest_cr = 100.0;
  p.forest_cb = 1e5;
  p.forest_cl = 1e4;
  p.forest_eta = 1.0 / 9.0;
  p.forest_zeta = 1.0 / 4000.0;
  p.prune_cl = 1e4;
  p.prune_cr = 1e4 + 500.0 * p.prune_cl;
  p.prune_cb = 5e5;
  p.prune_cg = 4.0 / 5.0;
  p.prune_beta = 100.0;
  p.prune_alpha = 5.0;
  p.sq_c = 20.0;
  p.sq_gamma = 1.0 / 600.0;
  p.fourier_c = 1000.0;
  p.fourier_gamma = 1.0 / 1000.0;
  p.fourier_alpha_div = 100.0;
  p.fourier_alpha_pow = 3.0;
  return p;
}

ConstantProfile ConstantProfile::named(const std::string& name) {
  if (name == "paper") return paper();
  if (name == "desk") return desk();
  throw std::invalid_argument("unknown profile: " + name +
                              " (expected paper|desk)");
}

void ConstantProfile::set(const std::string& key, double value) {
  for (const auto& f : kFields) {
    if (key == f.key) {
      this->*f.member = value;
      return;
    }
  }
  throw std::invalid_argument("unknown profile constant: " + key);
}

void ConstantProfile::set_kv(const std::string& kv) {
  const auto eq = kv.find('=');
  if (eq == std::string::npos || eq == 0)
    throw std::invalid_argument("expected key=value, got: " + kv);
  set(kv.substr(0, eq), std::stod(kv.substr(eq + 1)));
}

double ConstantProfile::get(const std::string& key) const {
  for (const auto& f : kFields)
    if (key == f.key) return this->*f.member;
  throw std::invalid_argument("unknown profile constant: " + key);
}

std::vector<std::pair<std::string, double>> ConstantProfile::echo() const {
  std::vector<std::pair<std::string, double>> out;
  out.reserve(std::size(kFields));
  for (const auto& f : kFields) out.emplace_back(f.key, this->*f.member);
  return out;
}

}  // namespace sketchlab
