#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <variant>

#include "CLI11.hpp"
#include "gsieve/archimedean.hpp"
#include "gsieve/characters.hpp"
#include "gsieve/exp_sums.hpp"
#include "gsieve/sieve_lab.hpp"
#include "gsieve/spectral.hpp"
#include "gsieve/verify.hpp"
#include "json.hpp"

namespace gsieve::cli {

namespace {

using Cell = std::variant<std::string, std::int64_t, double, cplx>;

struct Table {
  std::string name;
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
};

struct Report {
  std::vector<Table> tables;
  std::vector<std::string> notes;  // free-form lines (failing cases, summaries)
  std::optional<std::vector<ExperimentReport>> experiments;
  int exit = kOk;
};

using Metadata = std::vector<std::pair<std::string, std::string>>;

// ---------------------------------------------------------------------------
// Formatting

std::string text_double(double v) {
  if (v == 0.0) return "0";
  if (!std::isfinite(v)) return std::isnan(v) ? "nan" : (v > 0 ? "inf" : "-inf");
  char buf[64];
  const double a = std::abs(v);
  if (a >= 1e-3 && a < 1e7) {
    std::snprintf(buf, sizeof buf, "%.6f", v);
  } else {
    std::snprintf(buf, sizeof buf, "%.6e", v);
  }
  return buf;
}

std::string full_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string text_complex(cplx v) {
  if (std::abs(v.imag()) <= 1e-12 * std::max(1.0, std::abs(v.real()))) return text_double(v.real());
  return text_double(v.real()) + (v.imag() < 0 ? "-" : "+") + text_double(std::abs(v.imag())) + "i";
}

std::string text_cell(const Cell& c) {
  return std::visit(
      [](const auto& v) -> std::string {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, std::string>) return v;
        if constexpr (std::is_same_v<T, std::int64_t>) return std::to_string(v);
        if constexpr (std::is_same_v<T, double>) return text_double(v);
        if constexpr (std::is_same_v<T, cplx>) return text_complex(v);
      },
      c);
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

nlohmann::ordered_json json_cell(const Cell& c) {
  return std::visit(
      [](const auto& v) -> nlohmann::ordered_json {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, cplx>) {
          return nlohmann::ordered_json{{"re", v.real()}, {"im", v.imag()}};
        } else {
          return v;
        }
      },
      c);
}

void write_text(std::ostream& out, const Report& rep, const Metadata& meta) {
  out << "# gsieve " << kVersion << "\n";
  for (const auto& [k, v] : meta) out << "# " << k << " = " << v << "\n";
  for (const auto& t : rep.tables) {
    if (rep.tables.size() > 1) out << "\n[" << t.name << "]\n";
    std::vector<std::vector<std::string>> cells;
    std::vector<std::size_t> width(t.columns.size());
    for (std::size_t j = 0; j < t.columns.size(); ++j) width[j] = t.columns[j].size();
    for (const auto& row : t.rows) {
      std::vector<std::string> r;
      for (std::size_t j = 0; j < row.size(); ++j) {
        r.push_back(text_cell(row[j]));
        width[j] = std::max(width[j], r.back().size());
      }
      cells.push_back(std::move(r));
    }
    auto line = [&](const std::vector<std::string>& r) {
      for (std::size_t j = 0; j < r.size(); ++j) {
        out << r[j];
        if (j + 1 < r.size()) out << std::string(width[j] - r[j].size() + 2, ' ');
      }
      out << "\n";
    };
    line(t.columns);
    for (const auto& r : cells) line(r);
  }
  for (const auto& n : rep.notes) out << n << "\n";
}

void write_csv(std::ostream& out, const Report& rep, const Metadata& meta) {
  out << "# gsieve-report v1\n";
  out << "# version = " << kVersion << "\n";
  for (const auto& [k, v] : meta) out << "# " << k << " = " << v << "\n";
  for (const auto& t : rep.tables) {
    out << "# table = " << t.name << "\n";
    // complex columns split into _re/_im
    std::vector<bool> is_complex(t.columns.size(), false);
    for (const auto& row : t.rows) {
      for (std::size_t j = 0; j < row.size(); ++j) is_complex[j] = is_complex[j] || std::holds_alternative<cplx>(row[j]);
    }
    for (std::size_t j = 0; j < t.columns.size(); ++j) {
      if (j) out << ',';
      if (is_complex[j]) {
        out << t.columns[j] << "_re," << t.columns[j] << "_im";
      } else {
        out << t.columns[j];
      }
    }
    out << "\n";
    for (const auto& row : t.rows) {
      for (std::size_t j = 0; j < row.size(); ++j) {
        if (j) out << ',';
        const Cell& c = row[j];
        if (const auto* z = std::get_if<cplx>(&c)) {
          out << full_double(z->real()) << ',' << full_double(z->imag());
        } else if (const auto* d = std::get_if<double>(&c)) {
          out << full_double(*d) << (is_complex[j] ? ",0" : "");
        } else {
          out << csv_escape(text_cell(c)) << (is_complex[j] ? "," : "");
        }
      }
      out << "\n";
    }
  }
  for (const auto& n : rep.notes) out << "# " << n << "\n";
}

void write_json(std::ostream& out, const Report& rep, const Metadata& meta) {
  nlohmann::ordered_json doc;
  doc["format"] = "gsieve-report";
  doc["schema_version"] = 1;
  doc["version"] = kVersion;
  nlohmann::ordered_json cfg = nlohmann::ordered_json::object();
  for (const auto& [k, v] : meta) cfg[k] = v;
  doc["config"] = cfg;
  nlohmann::ordered_json tables = nlohmann::ordered_json::object();
  for (const auto& t : rep.tables) {
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (const auto& row : t.rows) {
      nlohmann::ordered_json r = nlohmann::ordered_json::object();
      for (std::size_t j = 0; j < row.size(); ++j) r[t.columns[j]] = json_cell(row[j]);
      rows.push_back(r);
    }
    tables[t.name] = rows;
  }
  doc["tables"] = tables;
  doc["notes"] = rep.notes;
  out << doc.dump(2) << "\n";
}

// ---------------------------------------------------------------------------
// Parsing helpers

cplx parse_complex(const std::string& text) {
  // a, bi, a+bi, a-bi, i, -i with real a, b
  auto bad = [&] { return DomainError("cannot parse complex number '" + text + "'"); };
  if (text.empty()) throw bad();
  auto real_of = [&](const std::string& s) -> double {
    if (s.empty() || s == "+") return 1.0;
    if (s == "-") return -1.0;
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(s, &used);
    } catch (const std::exception&) {
      throw bad();
    }
    if (used != s.size()) throw bad();
    return v;
  };
  if (text.back() != 'i') return {real_of(text), 0.0};
  const std::string body = text.substr(0, text.size() - 1);
  // split at the last sign that is not part of an exponent and not leading
  std::size_t split = std::string::npos;
  for (std::size_t k = body.size(); k-- > 1;) {
    if ((body[k] == '+' || body[k] == '-') && body[k - 1] != 'e' && body[k - 1] != 'E') {
      split = k;
      break;
    }
  }
  if (split == std::string::npos) return {0.0, real_of(body)};
  return {real_of(body.substr(0, split)), real_of(body.substr(split))};
}

std::string show(const GaussianInt& z) { return to_string(z); }

// ---------------------------------------------------------------------------
// Commands

struct Globals {
  std::string out_path;
  std::string format = "text";
  std::uint64_t seed = 1;
  std::string quadrature_path;
  std::optional<double> tolerance;
  QuadratureConfig quad;
};

Report cmd_kloosterman(const std::string& m, const std::string& n, const std::string& c) {
  const GaussianInt gm = parse_gaussian(m), gn = parse_gaussian(n), gc = parse_gaussian(c);
  Table t{"kloosterman", {"m", "n", "c", "value"}, {}};
  t.rows.push_back({show(gm), show(gn), show(gc), kloosterman(gm, gn, gc)});
  return {{t}, {}, {}, kOk};
}

Report cmd_fsum(const std::string& w, const std::string& c) {
  const GaussianInt gw = parse_gaussian(w), gc = parse_gaussian(c);
  Table t{"fsum", {"w", "c", "value"}, {}};
  t.rows.push_back({show(gw), show(gc), f_sum(gw, gc)});
  return {{t}, {}, {}, kOk};
}

Report cmd_charsum(const std::string& c, std::int64_t chi_index) {
  const GaussianInt gc = parse_gaussian(c);
  if (gc.is_zero()) throw DomainError("charsum needs c != 0");
  const MellinTransform mt(gc);
  Table t{"charsum", {"index", "conductor", "class", "real", "hat", "abs_hat"}, {}};
  const auto& g = mt.group();
  if (chi_index >= g.size()) throw DomainError("character index out of range (group order " + std::to_string(g.size()) + ")");
  for (std::int64_t k = 0; k < g.size(); ++k) {
    if (chi_index >= 0 && k != chi_index) continue;
    const auto chi = g.character(k);
    const CharInfo info = classify(chi);
    const cplx h = mt.hat(chi);
    t.rows.push_back({k, show(info.conductor.gen()), std::string(to_string(info.kind)),
                      std::string(chi.is_real() ? "yes" : "no"), h, std::abs(h)});
  }
  Report rep{{t}, {}, {}, kOk};
  rep.notes.push_back("group order " + std::to_string(g.size()) + ", modulus " + show(mt.modulus()));
  return rep;
}

Report cmd_lemma(const std::string& c, std::int64_t max_norm, double tol) {
  std::vector<GaussianInt> moduli;
  if (!c.empty()) {
    moduli.push_back(parse_gaussian(c));
  } else {
    if (max_norm < 2) throw DomainError("lemma-check needs --c or --max-norm >= 2");
    moduli = prime_power_moduli(static_cast<double>(max_norm));
  }
  Table t{"lemma", {"modulus", "index", "class", "k", "k_star", "real", "abs_hat", "predicted", "kind", "residual", "status"}, {}};
  std::int64_t fails = 0, total = 0;
  for (const auto& m : moduli) {
    for (const auto& lc : lemma_cases(m)) {
      const bool ok = lc.residual < tol;
      ++total;
      if (!ok) ++fails;
      // with --max-norm only failing rows are listed
      if (!c.empty() || !ok) {
        t.rows.push_back({show(lc.modulus), lc.index, std::string(to_string(lc.kind)), std::int64_t{lc.k},
                          std::int64_t{lc.k_star}, std::string(lc.real ? "yes" : "no"), lc.hat_abs, lc.predicted.value,
                          std::string(lc.predicted.is_bound ? "bound" : "exact"), lc.residual,
                          std::string(ok ? "pass" : "FAIL")});
      }
    }
  }
  Report rep{{t}, {}, {}, fails ? kVerificationFailed : kOk};
  rep.notes.push_back("cases " + std::to_string(total) + ", passed " + std::to_string(total - fails) + ", failed " +
                      std::to_string(fails));
  return rep;
}

Report cmd_bessel(const std::string& z, double T, double P, bool compare, const QuadratureConfig& q) {
  const cplx zz = parse_complex(z);
  const TestFunction tf(T, P);
  Table t{"bessel", {"representation", "value", "error_estimate"}, {}};
  const auto hs = H_spectral(zz, tf, q);
  t.rows.push_back({std::string("spectral"), hs.value, hs.error});
  Report rep{{}, {}, {}, kOk};
  if (compare) {
    const auto geo = H_geometric_both(zz, tf, q);
    t.rows.push_back({std::string("geometric0"), geo.form0.value, geo.form0.error});
    t.rows.push_back({std::string("geometric2"), geo.form2.value, geo.form2.error});
    auto rel = [](cplx a, cplx b) { return std::abs(a - b) / std::max(std::abs(a), std::abs(b)); };
    const double dev = std::max({rel(hs.value, geo.form0.value), rel(hs.value, geo.form2.value),
                                 rel(geo.form0.value, geo.form2.value)});
    rep.tables.push_back(t);
    rep.tables.push_back({"deviation", {"max_pairwise_relative_deviation"}, {{dev}}});
    return rep;
  }
  rep.tables.push_back(t);
  return rep;
}

Report cmd_plancherel(double T, double P, const QuadratureConfig& q) {
  const TestFunction tf(T, P);
  const double closed = plancherel_H(tf);
  const auto quad = plancherel_H_quadrature(tf, q);
  Table t{"plancherel", {"T", "P", "closed_form", "quadrature", "error_estimate", "relative_deviation"}, {}};
  t.rows.push_back({T, P, closed, quad.value, quad.error, std::abs(closed - quad.value) / std::abs(closed)});
  return {{t}, {}, {}, kOk};
}

Report cmd_zeta(const std::string& s, int p, double cutoff, const std::string& mode) {
  const cplx ss = parse_complex(s);
  const ZetaMode zm = mode == "smoothed" ? ZetaMode::kSmoothed : ZetaMode::kDirect;
  const ZetaValue v = hecke_zeta(ss, p, cutoff, zm);
  Table t{"zeta", {"s", "p", "cutoff", "mode", "value", "tail_estimate"}, {}};
  t.rows.push_back({ss, std::int64_t{p}, cutoff, mode, v.value, v.tail_estimate});
  return {{t}, {}, {}, kOk};
}

Report experiment_report(const TrialSummary& s) {
  Report rep;
  Table t{"summary", {"experiment", "trials", "max_ratio", "mean_ratio", "all_finite"}, {}};
  t.rows.push_back({s.experiment, static_cast<std::int64_t>(s.reports.size()), s.max_ratio, s.mean_ratio,
                    std::string(s.all_finite ? "yes" : "no")});
  rep.tables.push_back(t);
  rep.experiments = s.reports;
  return rep;
}

Report cmd_kuznetsov(const std::string& m, const std::string& n, double T, double P, std::int64_t cutoff,
                     const QuadratureConfig& q) {
  const GaussianInt gm = parse_gaussian(m), gn = parse_gaussian(n);
  if (cutoff < 1) throw DomainError("kuznetsov-geom needs --cutoff >= 1");
  const auto k = kuznetsov_geometric(gm, gn, TestFunction(T, P), cutoff, q);
  Table t{"kuznetsov", {"m", "n", "cutoff", "diagonal", "kloosterman_term", "total", "tail_bound", "moduli"}, {}};
  t.rows.push_back({show(gm), show(gn), cutoff, k.diagonal, k.kloosterman_term, k.diagonal + k.kloosterman_term,
                    k.tail_bound, k.moduli});
  return {{t}, {}, {}, kOk};
}

Report cmd_verify(const std::string& suite, std::int64_t max_norm, const Globals& g) {
  VerifyOptions opts;
  opts.max_norm = max_norm;
  opts.tolerance = g.tolerance;
  opts.seed = g.seed;
  opts.quadrature = g.quad;
  const auto results = suite == "all" ? verify_all(opts) : run_suite(suite, opts);
  Table t{"verify", {"suite", "cases", "passed", "failed", "worst_residual", "threshold", "status"}, {}};
  Report rep;
  bool all_ok = true;
  for (const auto& r : results) {
    t.rows.push_back({r.name, r.cases, r.passed, r.failed_total, r.worst_residual, r.threshold,
                      std::string(r.ok() ? "pass" : "FAIL")});
    if (!r.ok()) {
      all_ok = false;
      for (const auto& f : r.failures) rep.notes.push_back("FAIL " + r.name + ": " + f);
      if (r.failed_total > static_cast<std::int64_t>(r.failures.size())) {
        rep.notes.push_back("FAIL " + r.name + ": ... " +
                            std::to_string(r.failed_total - static_cast<std::int64_t>(r.failures.size())) + " more");
      }
    }
    rep.notes.push_back("worst " + r.name + ": " + r.worst_case);
  }
  rep.tables.push_back(t);
  rep.exit = all_ok ? kOk : kVerificationFailed;
  return rep;
}

std::string option_value(const CLI::Option* opt) {
  if (opt->count() > 0) {
    std::string s;
    for (const auto& r : opt->results()) s += (s.empty() ? "" : " ") + r;
    // flags store their count
    if (opt->get_expected_min() == 0) return "true";
    return s;
  }
  if (opt->get_expected_min() == 0) return "false";
  return opt->get_default_str();
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Kloosterman sums, characters and large-sieve experiments over Z[i]", "gsieve"};
  app.option_defaults()->always_capture_default();
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);

  Globals g;
  app.add_option("--out", g.out_path, "write the report to this file");
  app.add_option("--format", g.format, "text, csv or json")->check(CLI::IsMember({"text", "csv", "json"}));
  app.add_option("--seed", g.seed, "seed for randomized suites and trials");
  app.add_option("--quadrature", g.quadrature_path, "flat key = value quadrature config")->check(CLI::ExistingFile);
  double tolerance = 0.0;
  auto* tol_opt = app.add_option("--tolerance", tolerance, "replace every residual threshold (default: per-suite)")
                     ->default_str("");

  auto sub = [&](const char* name, const char* help) {
    auto* s = app.add_subcommand(name, help);
    s->fallthrough();
    return s;
  };

  std::string m = "1", n = "1", c, w;
  auto* k_cmd = sub("kloosterman", "S(m, n; c)");
  k_cmd->add_option("--m", m, "Gaussian integer a+bi")->required();
  k_cmd->add_option("--n", n)->required();
  k_cmd->add_option("--c", c)->required();

  auto* f_cmd = sub("fsum", "F(w; c) = S(w^2, 1; c) e[2w/c]");
  f_cmd->add_option("--w", w)->required();
  f_cmd->add_option("--c", c)->required();

  std::int64_t chi_index = -1;
  auto* cs_cmd = sub("charsum", "finite Mellin transform of F(.; c) at every character");
  cs_cmd->add_option("--c", c)->required();
  cs_cmd->add_option("--chi", chi_index, "single character index (-1: all)");

  std::int64_t lemma_norm = 0;
  auto* l_cmd = sub("lemma-check", "compare |F^(chi)| with the prime-power case formulas");
  l_cmd->add_option("--c", c, "prime-power modulus");
  l_cmd->add_option("--max-norm", lemma_norm, "every prime-power modulus up to this norm");

  std::string z = "1";
  double T = 1.0, P = 1.0;
  bool compare = false;
  auto* b_cmd = sub("bessel", "Bessel integral H(z)");
  b_cmd->add_option("--z", z)->required();
  b_cmd->add_option("--T", T)->check(CLI::PositiveNumber);
  b_cmd->add_option("--P", P)->check(CLI::PositiveNumber);
  b_cmd->add_flag("--compare", compare, "also both geometric forms and their deviation");

  auto* p_cmd = sub("plancherel", "Plancherel integral, closed form vs quadrature");
  p_cmd->add_option("--T", T)->check(CLI::PositiveNumber);
  p_cmd->add_option("--P", P)->check(CLI::PositiveNumber);

  std::string s = "2", mode = "direct";
  int zp = 0;
  double cutoff = 1e5;
  auto* z_cmd = sub("zeta", "Hecke zeta function zeta(s, p)");
  z_cmd->add_option("--s", s, "complex a+bi");
  z_cmd->add_option("--p", zp);
  z_cmd->add_option("--cutoff", cutoff)->check(CLI::PositiveNumber);
  z_cmd->add_option("--mode", mode)->check(CLI::IsMember({"direct", "smoothed"}));

  double eT = 2.0, eP = 1.0;
  std::int64_t eN = 30, trials = 100;
  auto* e_cmd = sub("eisenstein", "Eisenstein side of the spectral large sieve, randomized trials");
  e_cmd->add_option("--T", eT)->check(CLI::PositiveNumber);
  e_cmd->add_option("--P", eP)->check(CLI::PositiveNumber);
  e_cmd->add_option("--N", eN)->check(CLI::PositiveNumber);
  e_cmd->add_option("--trials", trials)->check(CLI::PositiveNumber);

  double kT = 2.0, kP = 2.0;
  std::int64_t kcut = 100;
  auto* kg_cmd = sub("kuznetsov-geom", "geometric side of the Kuznetsov formula");
  kg_cmd->add_option("--m", m);
  kg_cmd->add_option("--n", n);
  kg_cmd->add_option("--T", kT)->check(CLI::PositiveNumber);
  kg_cmd->add_option("--P", kP)->check(CLI::PositiveNumber);
  kg_cmd->add_option("--cutoff", kcut, "sum over 0 < N(c) <= cutoff");

  double qC = 8.0, qgamma = 0.0;
  std::int64_t qM = 8, qN = 8;
  std::string qd = "1", qtheta = "0.37+0.21i";
  auto* q_cmd = sub("quadform", "quadratic form in F(dmn; c), randomized trials");
  q_cmd->add_option("--C", qC)->check(CLI::PositiveNumber);
  q_cmd->add_option("--M", qM)->check(CLI::PositiveNumber);
  q_cmd->add_option("--N", qN)->check(CLI::PositiveNumber);
  q_cmd->add_option("--gamma", qgamma);
  q_cmd->add_option("--d", qd);
  q_cmd->add_option("--theta", qtheta);
  q_cmd->add_option("--trials", trials)->check(CLI::PositiveNumber);

  double hC = 4.0, hT = 2.0;
  std::int64_t hN = 20;
  auto* h_cmd = sub("hybrid", "hybrid large sieve over characters and Grossencharacters, randomized trials");
  h_cmd->add_option("--C", hC)->check(CLI::Range(1.0, 1e6));
  h_cmd->add_option("--T", hT)->check(CLI::Range(1.0, 1e6));
  h_cmd->add_option("--N", hN)->check(CLI::PositiveNumber);
  h_cmd->add_option("--trials", trials)->check(CLI::PositiveNumber);

  std::string suite = "all";
  std::int64_t max_norm = 200;
  std::vector<std::string> suites{"all", "charsum"};
  for (const char* nm : kSuiteNames) suites.emplace_back(nm);
  auto* v_cmd = sub("verify", "identity suites");
  v_cmd->add_option("suite", suite, "all, charsum or one suite")->check(CLI::IsMember(suites));
  v_cmd->add_option("--max-norm", max_norm)->check(CLI::Range(std::int64_t{2}, std::int64_t{100000}));

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::CallForVersion&) {
    out << kVersion << "\n";
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    err << "run with --help for the option list\n";
    return kUsage;
  }
  if (tol_opt->count() > 0) g.tolerance = tolerance;

  CLI::App* chosen = app.get_subcommands().front();
  const std::string command = chosen->get_name();

  try {
    if (!g.quadrature_path.empty()) g.quad = QuadratureConfig::load(g.quadrature_path);

    Metadata meta;
    meta.emplace_back("command", command);
    for (const CLI::Option* opt : chosen->get_options()) {
      if (opt->get_name() == "--help") continue;
      meta.emplace_back(opt->get_single_name(), option_value(opt));
    }
    meta.emplace_back("seed", std::to_string(g.seed));
    meta.emplace_back("format", g.format);
    meta.emplace_back("tolerance", g.tolerance ? full_double(*g.tolerance) : "default");
    for (const auto& [k, v] : g.quad.to_map()) meta.emplace_back("quadrature." + k, v);

    const TrialPreset preset{trials, g.seed};
    Report rep;
    if (command == "kloosterman") {
      rep = cmd_kloosterman(m, n, c);
    } else if (command == "fsum") {
      rep = cmd_fsum(w, c);
    } else if (command == "charsum") {
      rep = cmd_charsum(c, chi_index);
    } else if (command == "lemma-check") {
      if (c.empty() == (lemma_norm == 0)) throw DomainError("lemma-check needs exactly one of --c and --max-norm");
      rep = cmd_lemma(c, lemma_norm, g.tolerance.value_or(1e-9));
    } else if (command == "bessel") {
      rep = cmd_bessel(z, T, P, compare, g.quad);
    } else if (command == "plancherel") {
      rep = cmd_plancherel(T, P, g.quad);
    } else if (command == "zeta") {
      rep = cmd_zeta(s, zp, cutoff, mode);
    } else if (command == "eisenstein") {
      rep = experiment_report(eisenstein_trials(preset, eT, eP, eN));
    } else if (command == "kuznetsov-geom") {
      rep = cmd_kuznetsov(m, n, kT, kP, kcut, g.quad);
    } else if (command == "quadform") {
      QuadFormInput in;
      in.d = parse_gaussian(qd);
      in.theta = parse_complex(qtheta);
      in.gamma = qgamma;
      in.C = qC;
      rep = experiment_report(quad_form_trials(preset, in, qM, qN));
    } else if (command == "hybrid") {
      rep = experiment_report(hybrid_trials(preset, hC, hT, hN));
    } else if (command == "verify") {
      rep = cmd_verify(suite, max_norm, g);
    }

    std::ofstream file;
    std::ostream* sink = &out;
    if (!g.out_path.empty()) {
      file.open(g.out_path);
      if (!file) throw DomainError("cannot open output file '" + g.out_path + "'");
      sink = &file;
    }
    if (rep.experiments && g.format != "text") {
      Metadata full = meta;
      const auto& row = rep.tables.front().rows.front();
      full.emplace_back("max_ratio", full_double(std::get<double>(row[2])));
      full.emplace_back("mean_ratio", full_double(std::get<double>(row[3])));
      if (g.format == "csv") {
        write_reports_csv(*sink, *rep.experiments, full);
      } else {
        write_reports_json(*sink, *rep.experiments, full);
      }
    } else if (g.format == "csv") {
      write_csv(*sink, rep, meta);
    } else if (g.format == "json") {
      write_json(*sink, rep, meta);
    } else {
      write_text(*sink, rep, meta);
    }
    sink->flush();
    if (rep.exit == kVerificationFailed) {
      err << command << ": verification failed\n";
      for (const auto& note : rep.notes) {
        if (note.rfind("FAIL", 0) == 0) err << note << "\n";
      }
    }
    return rep.exit;
  } catch (const OverflowError& e) {
    err << "error: integer overflow: " << e.what() << "\n";
    return kUsage;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const RangeError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }
}

}  // namespace gsieve::cli
