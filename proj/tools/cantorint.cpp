// Command-line front end: sequence tables, extrema scans, the limit
// function, the self-similar measure, distribution reports and the linear
// closed forms, emitted as CSV or JSON.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "cantor/distribution.hpp"
#include "cantor/digits.hpp"
#include "cantor/limitfn.hpp"
#include "cantor/linearcase.hpp"
#include "cantor/measure.hpp"
#include "cantor/sequence.hpp"
#include "cantor/types.hpp"

using json = nlohmann::ordered_json;
using namespace cantor;

namespace {

std::string fmt17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string rat_str(const Rational& q) { return q.str(); }

// Decimal or a/b literal -> exact rational ("0.65" parses as 65/100).
Rational parse_rational(const std::string& text) {
  const auto slash = text.find('/');
  if (slash != std::string::npos) {
    const BigNat num(text.substr(0, slash));
    const BigNat den(text.substr(slash + 1));
    if (den == 0) throw std::invalid_argument("zero denominator");
    return Rational(num, den);
  }
  const auto dot = text.find('.');
  if (dot == std::string::npos) return Rational(BigNat(text));
  const std::string head = dot == 0 ? "0" : text.substr(0, dot);
  const std::string tail = text.substr(dot + 1);
  BigNat den = 1;
  for (std::size_t i = 0; i < tail.size(); ++i) den *= 10;
  return Rational(BigNat(head)) + Rational(BigNat(tail), den);
}

struct Output {
  std::string format = "csv";
  std::string path;

  std::ofstream file;
  std::ostream& stream() {
    if (!path.empty() && !file.is_open()) file.open(path);
    return path.empty() ? std::cout : file;
  }
};

void emit_table(Output&& out, const std::vector<std::string>& header,
                const std::vector<std::vector<std::string>>& rows) {
  std::ostream& os = out.stream();
  if (out.format == "json") {
    json arr = json::array();
    for (const auto& row : rows) {
      json obj;
      for (std::size_t i = 0; i < header.size(); ++i) obj[header[i]] = row[i];
      arr.push_back(obj);
    }
    os << arr.dump(2) << "\n";
    return;
  }
  for (std::size_t i = 0; i < header.size(); ++i)
    os << header[i] << (i + 1 < header.size() ? "," : "");
  os << "\n";
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i)
      os << row[i] << (i + 1 < row.size() ? "," : "");
    os << "\n";
  }
}

const char* verdict_str(Verdict v) {
  switch (v) {
    case Verdict::True:
      return "true";
    case Verdict::False:
      return "false";
    default:
      return "indeterminate";
  }
}

struct Options {
  std::string sys_spec;
  std::string format = "csv";
  std::string out_path;
  std::string precision = "double";
  std::uint64_t cap_atoms = kDefaultAtomCap;
  std::uint64_t cap_scan = 1u << 26;

  CantorSystem system() const {
    if (sys_spec.empty())
      throw std::invalid_argument("this command needs --sys \"p=..;A=..\"");
    return CantorSystem::parse(sys_spec);
  }
  double default_tol() const {
    return precision == "high" ? 1e-13 : 1e-9;
  }
  Output output() const { return Output{format, out_path, {}}; }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"generalized Cantor integers and their distribution"};
  app.require_subcommand(1);

  Options opt;
  app.add_option("--sys", opt.sys_spec, "system spec, e.g. \"p=3;A=0,2\"");
  app.add_option("--format", opt.format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--out", opt.out_path, "output path (default stdout)");
  app.add_option("--precision", opt.precision, "double or high")
      ->check(CLI::IsMember({"double", "high"}));
  app.add_option("--cap-atoms", opt.cap_atoms, "atom budget for ifs");
  app.add_option("--cap-scan", opt.cap_scan, "index budget for scans");

  // seq
  auto* seq = app.add_subcommand("seq", "stream (n, a_n, b_n) rows")->fallthrough();
  std::string seq_count = "10";
  seq->add_option("--count", seq_count, "number of rows");
  seq->callback([&] {
    const CantorSystem sys = opt.system();
    const BigNat N(seq_count);
    Output out = opt.output();
    std::ostream& os = out.stream();
    const bool jsonfmt = opt.format == "json";
    if (jsonfmt) os << "[\n";
    if (!jsonfmt) os << "n,a_n,b_n,err_bound\n";
    for_each_term(sys, N, [&](const BigNat& n, const BigNat& a) {
      const CertifiedValue b = b_value(sys, n);
      if (jsonfmt) {
        os << "  {\"n\": \"" << n.str() << "\", \"a_n\": \"" << a.str()
           << "\", \"b_n\": " << fmt17(b.value)
           << ", \"err_bound\": " << fmt17(b.abs_error) << "}"
           << (n == N ? "\n" : ",\n");
      } else {
        os << n.str() << ',' << a.str() << ',' << fmt17(b.value) << ','
           << fmt17(b.abs_error) << "\n";
      }
    });
    if (jsonfmt) os << "]\n";
  });

  // extrema
  auto* extrema = app.add_subcommand("extrema", "min/max of b_n up to N")->fallthrough();
  std::string ext_limit = "1000";
  int ext_q = 0, ext_r = -1, ext_p = 0;
  extrema->add_option("--limit", ext_limit, "scan limit");
  extrema->add_option("--q", ext_q, "linear system: emit exact m, M too");
  extrema->add_option("--r", ext_r);
  extrema->add_option("--p", ext_p);
  extrema->callback([&] {
    ExtremaReport r;
    if (ext_q > 0) {
      if (ext_r < 0 || ext_p <= 0)
        throw std::invalid_argument("linear extrema need --q --r --p");
      if (!opt.sys_spec.empty())
        throw std::invalid_argument("give either --sys or --q/--r/--p");
      const LinearSystem ls(ext_q, ext_r, ext_p);
      r = scan_extrema(ls.system(), BigNat(ext_limit));
      const auto [m, M] = exact_bounds(ls);
      r.exact_m = m;
      r.exact_M = M;
    } else {
      r = scan_extrema(opt.system(), BigNat(ext_limit));
    }
    std::vector<std::string> header{"limit", "argmin", "b_min", "argmax",
                                    "b_max"};
    std::vector<std::string> row{r.limit.str(), r.argmin.str(),
                                 fmt17(r.min.value), r.argmax.str(),
                                 fmt17(r.max.value)};
    if (r.exact_m) {
      header.insert(header.end(), {"m_exact", "M_exact"});
      row.insert(row.end(), {rat_str(*r.exact_m), rat_str(*r.exact_M)});
    }
    emit_table(opt.output(), header, {row});
  });

  // descent
  auto* descent = app.add_subcommand("descent", "check the descent chain")->fallthrough();
  std::string desc_n = "1";
  std::uint64_t desc_horizon = 0;
  descent->add_option("--n", desc_n, "index n");
  descent->add_option("--horizon", desc_horizon,
                      "scan [1, horizon] and report the last violation N0");
  descent->callback([&] {
    const CantorSystem sys = opt.system();
    if (desc_horizon > 0) {
      const std::uint64_t n0 = last_descent_violation(sys, desc_horizon);
      emit_table(opt.output(), {"horizon", "last_violation"},
                 {{std::to_string(desc_horizon), std::to_string(n0)}});
      return;
    }
    emit_table(opt.output(), {"n", "verdict"},
               {{desc_n, verdict_str(check_descent(sys, BigNat(desc_n)))}});
  });

  // dense
  auto* dense = app.add_subcommand("dense", "density subsequence towards gamma")->fallthrough();
  double gamma = 1.5;
  int terms = 20;
  dense->add_option("--gamma", gamma, "target value in (m, M)")->required();
  dense->add_option("--terms", terms, "number of terms");
  dense->callback([&] {
    const CantorSystem sys = opt.system();
    const auto steps = density_subsequence(sys, gamma, terms);
    std::vector<std::vector<std::string>> rows;
    int k = 1;
    for (const auto& st : steps)
      rows.push_back({std::to_string(k++), st.n.str(), fmt17(st.b.value),
                      fmt17(st.b.abs_error), fmt17(st.b.value - gamma)});
    emit_table(opt.output(), {"k", "n_k", "b_nk", "err_bound", "diff"}, rows);
  });

  // lambda
  auto* lam = app.add_subcommand("lambda", "evaluate the limit function")->fallthrough();
  std::string lam_x;
  double lam_tol = 0;
  lam->add_option("--x", lam_x, "s-ary literal or rational")->required();
  lam->add_option("--tol", lam_tol, "absolute error budget");
  lam->callback([&] {
    const CantorSystem sys = opt.system();
    const double tol = lam_tol > 0 ? lam_tol : opt.default_tol();
    const SAryReal x = SAryReal::parse(lam_x, sys.s());
    const CertifiedValue v = lambda(sys, x, tol);
    opt.output().stream() << fmt17(v.value) << " ± " << fmt17(v.abs_error)
                          << "\n";
  });

  // measure
  auto* meas = app.add_subcommand("measure", "mu_C CDF value or staircase")->fallthrough();
  std::string meas_x = "1";
  double meas_tol = 0;
  int meas_grid = 0;
  meas->add_option("--x", meas_x, "point in [0,1], decimal or a/b");
  meas->add_option("--tol", meas_tol, "absolute error budget");
  meas->add_option("--grid", meas_grid, "emit a staircase table instead");
  meas->callback([&] {
    const CantorSystem sys = opt.system();
    const double tol = meas_tol > 0 ? meas_tol : opt.default_tol();
    if (meas_grid > 0) {
      std::vector<std::vector<std::string>> rows;
      for (int i = 0; i <= meas_grid; ++i) {
        const Rational x(i, meas_grid);
        const CertifiedValue v = mu_cdf(sys, x, tol);
        rows.push_back({rat_str(x), fmt17(v.value), fmt17(v.abs_error)});
      }
      emit_table(opt.output(), {"x", "mu_cdf", "err"}, rows);
      return;
    }
    const CertifiedValue v = mu_cdf(sys, parse_rational(meas_x), tol);
    opt.output().stream() << fmt17(v.value) << " ± " << fmt17(v.abs_error)
                          << "\n";
  });

  // ifs
  auto* ifs = app.add_subcommand("ifs", "atoms of F^k(delta_0)")->fallthrough();
  int ifs_k = 3;
  ifs->add_option("--k", ifs_k, "iteration depth");
  ifs->callback([&] {
    const CantorSystem sys = opt.system();
    const AtomicMeasure m = ifs_iterate(sys, ifs_k, opt.cap_atoms);
    std::vector<std::vector<std::string>> rows;
    rows.reserve(m.locations.size());
    for (double x : m.locations) rows.push_back({fmt17(x), fmt17(m.weight)});
    emit_table(opt.output(), {"x", "weight"}, rows);
  });

  // accpoint
  auto* acc = app.add_subcommand("accpoint", "accumulation-point value of a C-point")->fallthrough();
  std::string acc_digits;
  acc->add_option("--digits", acc_digits, "base-p digits, e.g. 0.2 or 0.2(02)")
      ->required();
  acc->callback([&] {
    const CantorSystem sys = opt.system();
    std::string text = acc_digits;
    if (text.rfind("p-ary:", 0) == 0) text = text.substr(6);
    const SAryReal x = SAryReal::parse(text, sys.p());
    const CertifiedValue v = accumulation_map(sys, x);
    opt.output().stream() << fmt17(v.value) << " ± " << fmt17(v.abs_error)
                          << "\n";
  });

  // cdf (oscillation witness)
  auto* cdf = app.add_subcommand("cdf", "two-scale-family D/x oscillation")->fallthrough();
  double cdf_alpha = 1.5;
  std::string cdf_x1, cdf_eta1, cdf_x2, cdf_eta2;
  int cdf_kmin = 6, cdf_kmax = 12, cdf_kval = 10;
  cdf->add_option("--alpha", cdf_alpha)->required();
  cdf->add_option("--x1", cdf_x1, "low-window center")->required();
  cdf->add_option("--eta1", cdf_eta1)->required();
  cdf->add_option("--x2", cdf_x2, "high-window left edge")->required();
  cdf->add_option("--eta2", cdf_eta2)->required();
  cdf->add_option("--kmin", cdf_kmin);
  cdf->add_option("--kmax", cdf_kmax);
  cdf->add_option("--kval", cdf_kval, "window validation depth");
  cdf->callback([&] {
    const CantorSystem sys = opt.system();
    const OscillationReport rep = cdf_oscillation(
        sys, Rational(cdf_alpha), parse_rational(cdf_x1),
        parse_rational(cdf_eta1), parse_rational(cdf_x2),
        parse_rational(cdf_eta2), cdf_kmin, cdf_kmax, cdf_kval);
    std::vector<std::vector<std::string>> rows;
    for (const auto& r : rep.rows)
      rows.push_back({std::to_string(r.k), fmt17(r.scale1), fmt17(r.ratio1),
                      fmt17(r.scale2), fmt17(r.ratio2), fmt17(r.gap)});
    emit_table(opt.output(), {"k", "scale1", "ratio1", "scale2", "ratio2", "gap"},
               rows);
  });

  // ldf
  auto* ldf = app.add_subcommand("ldf", "logarithmic distribution report")->fallthrough();
  double ldf_alpha = 1.5;
  int ldf_kmax = 10;
  ldf->add_option("--alpha", ldf_alpha)->required();
  ldf->add_option("--kmax", ldf_kmax);
  ldf->callback([&] {
    const CantorSystem sys = opt.system();
    const DistributionReport rep =
        build_distribution_report(sys, Rational(ldf_alpha), ldf_kmax,
                                  opt.cap_scan);
    std::vector<std::vector<std::string>> rows;
    for (const DistributionRow& r : rep.rows)
      rows.push_back({std::to_string(r.k), r.x.str(), fmt17(rep.alpha),
                      fmt17(r.d_ratio), fmt17(r.l_empirical),
                      fmt17(r.l_analytic), fmt17(r.l_err)});
    emit_table(opt.output(),
               {"k", "x", "alpha", "D_ratio", "L_empirical", "L_analytic",
                "L_err"},
               rows);
  });

  // levelset
  auto* lvl = app.add_subcommand("levelset", "measure of |lambda - alpha| < eps")->fallthrough();
  double lvl_alpha = 1.5, lvl_eps = 0.01;
  int lvl_k = 12;
  lvl->add_option("--alpha", lvl_alpha)->required();
  lvl->add_option("--eps", lvl_eps);
  lvl->add_option("--k", lvl_k);
  lvl->callback([&] {
    const CantorSystem sys = opt.system();
    opt.output().stream()
        << fmt17(level_set_probe(sys, lvl_alpha, lvl_k, lvl_eps, opt.cap_scan))
        << "\n";
  });

  // bounds
  auto* bounds = app.add_subcommand("bounds", "exact linear-case extrema")->fallthrough();
  int b_q = 2, b_r = 0, b_p = 3;
  bounds->add_option("--q", b_q)->required();
  bounds->add_option("--r", b_r)->required();
  bounds->add_option("--p", b_p)->required();
  bounds->callback([&] {
    const LinearSystem ls(b_q, b_r, b_p);
    const auto [m, M] = exact_bounds(ls);
    json out;
    out["m"] = rat_str(m);
    out["M"] = rat_str(M);
    out["s"] = ls.s();
    out["A"] = ls.system().A();
    opt.output().stream() << out.dump() << "\n";
  });

  // envelope
  auto* env = app.add_subcommand("envelope", "b_{s^{k+1}-1} <= b_n <= b_{s^k}")->fallthrough();
  int e_q = 2, e_r = 0, e_p = 3, e_k = 3;
  env->add_option("--q", e_q)->required();
  env->add_option("--r", e_r)->required();
  env->add_option("--p", e_p)->required();
  env->add_option("--k", e_k);
  env->callback([&] {
    const LinearSystem ls(e_q, e_r, e_p);
    const EnvelopeReport rep = check_dyadic_envelope(ls, e_k, opt.cap_scan);
    json out;
    out["k"] = rep.k;
    out["holds"] = rep.holds;
    out["violations"] = rep.violations;
    out["indeterminate"] = rep.indeterminate;
    out["b_upper"] = rat_str(rep.b_upper_exact);
    out["b_lower"] = fmt17(rep.b_lower.value);
    out["closed_forms_ok"] = rep.closed_forms_ok;
    opt.output().stream() << out.dump() << "\n";
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  } catch (const budget_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
