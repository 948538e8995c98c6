#include "gsieve/quadrature.hpp"

#include <cmath>
#include <fstream>
#include <mutex>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "gsieve/gaussian.hpp"

namespace gsieve {

namespace {

GaussRule make_rule(int n) {
  GaussRule rule;
  rule.nodes.resize(static_cast<std::size_t>(n));
  rule.weights.resize(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    rule.nodes[static_cast<std::size_t>(i)] = x;
    rule.weights[static_cast<std::size_t>(i)] = 2.0 / ((1.0 - x * x) * dp * dp);
  }
  return rule;
}

}  // namespace

const GaussRule& gauss_legendre(int n) {
  static std::mutex mu;
  static std::map<int, GaussRule> cache;
  if (n < 1) throw DomainError("Gauss-Legendre order must be positive");
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, make_rule(n)).first;
  return it->second;
}

std::map<std::string, std::string> QuadratureConfig::to_map() const {
  auto fmt = [](double v) {
    std::ostringstream os;
    os.precision(17);
    os << v;
    return os.str();
  };
  return {
      {"t_cut", fmt(t_cut)},
      {"p_cut", fmt(p_cut)},
      {"r_cut", fmt(r_cut)},
      {"theta_q_cut", std::to_string(theta_q_cut)},
      {"gl_order", std::to_string(gl_order)},
      {"t_panels_per_unit", fmt(t_panels_per_unit)},
      {"phase_per_panel", fmt(phase_per_panel)},
      {"panel_scale", fmt(panel_scale)},
      {"t_eps", fmt(t_eps)},
      {"z_max", fmt(z_max)},
  };
}

QuadratureConfig QuadratureConfig::from_map(const std::map<std::string, std::string>& kv) {
  QuadratureConfig cfg;
  for (const auto& [key, value] : kv) {
    auto num = [&] {
      try {
        std::size_t used = 0;
        const double v = std::stod(value, &used);
        if (used != value.size()) throw std::invalid_argument(value);
        return v;
      } catch (const std::exception&) {
        throw DomainError("quadrature config: bad value for '" + key + "': " + value);
      }
    };
    if (key == "t_cut") cfg.t_cut = num();
    else if (key == "p_cut") cfg.p_cut = num();
    else if (key == "r_cut") cfg.r_cut = num();
    else if (key == "theta_q_cut") cfg.theta_q_cut = static_cast<int>(num());
    else if (key == "gl_order") cfg.gl_order = static_cast<int>(num());
    else if (key == "t_panels_per_unit") cfg.t_panels_per_unit = num();
    else if (key == "phase_per_panel") cfg.phase_per_panel = num();
    else if (key == "panel_scale") cfg.panel_scale = num();
    else if (key == "t_eps") cfg.t_eps = num();
    else if (key == "z_max") cfg.z_max = num();
    else throw DomainError("quadrature config: unknown key '" + key + "'");
  }
  if (cfg.t_cut <= 0 || cfg.p_cut <= 0 || cfg.r_cut <= 0 || cfg.theta_q_cut <= 0 || cfg.gl_order <= 0 ||
      cfg.t_panels_per_unit <= 0 || cfg.phase_per_panel <= 0 || cfg.panel_scale <= 0 || cfg.t_eps <= 0 ||
      cfg.z_max <= 0) {
    throw DomainError("quadrature config: all parameters must be positive");
  }
  return cfg;
}

QuadratureConfig QuadratureConfig::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot open quadrature config '" + path + "'");
  std::map<std::string, std::string> kv;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw DomainError(path + ":" + std::to_string(lineno) + ": expected 'key = value'");
    }
    auto trim = [](std::string s) {
      const auto b = s.find_first_not_of(" \t\r");
      const auto e = s.find_last_not_of(" \t\r");
      return b == std::string::npos ? std::string{} : s.substr(b, e - b + 1);
    };
    kv[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
  }
  return from_map(kv);
}

void QuadratureConfig::save(const std::string& path) const {
  std::ofstream out(path);
  if (!out) throw DomainError("cannot write quadrature config '" + path + "'");
  out << to_string();
}

std::string QuadratureConfig::to_string() const {
  std::ostringstream os;
  for (const auto& [k, v] : to_map()) os << k << " = " << v << "\n";
  return os.str();
}

QuadratureConfig QuadratureConfig::refined() const {
  QuadratureConfig c = *this;
  c.panel_scale *= 2.0;
  return c;
}

}  // namespace gsieve
