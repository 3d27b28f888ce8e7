#include "bergman/run.hpp"

#include <cstdio>
#include <fstream>
#include <json.hpp>
#include <ostream>
#include <sstream>

#include "bergman/metric.hpp"
#include "bergman/zeros.hpp"

namespace bergman {

namespace {

using ordered_json = nlohmann::ordered_json;

std::string fmt17(double x) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

const char* command_name(RunConfig::Command c) {
  switch (c) {
    case RunConfig::Command::Kernel: return "kernel";
    case RunConfig::Command::Moments: return "moments";
    case RunConfig::Command::Berezin: return "berezin";
    case RunConfig::Command::Growth: return "growth";
    case RunConfig::Command::Metric: return "metric";
    case RunConfig::Command::Zeros: return "zeros";
    case RunConfig::Command::Figure1: return "figure1";
    case RunConfig::Command::Figure2: return "figure2";
    case RunConfig::Command::Selfcheck: return "selfcheck";
  }
  return "unknown";
}

// Accumulates one table plus metadata, then renders csv or json.
class Emitter {
 public:
  Emitter(const RunConfig& cfg) : cfg_(cfg) {
    meta_["tool"] = "bergman";
    meta_["version"] = kToolVersion;
    meta_["command"] = command_name(cfg.command);
    ordered_json params;
    params["n"] = cfg.n;
    params["a"] = cfg.a;
    params["b"] = cfg.b;
    params["c"] = cfg.c;
    params["d"] = cfg.d;
    params["p"] = cfg.p;
    params["s"] = cfg.s;
    params["tau"] = cfg.tau;
    params["m"] = cfg.m;
    params["radius"] = cfg.radius;
    meta_["params"] = params;
    meta_["seed"] = cfg.seed;
    meta_["threads"] = cfg.threads;
    ordered_json tol;
    tol["max_terms"] = cfg.max_terms;
    tol["rel_tol"] = cfg.rel_tol;
    meta_["tolerances"] = tol;
  }

  void note(const std::string& key, const ordered_json& value) { meta_[key] = value; }

  void columns(std::vector<std::string> names) { columns_ = std::move(names); }

  void row(const std::vector<std::string>& cells) { rows_.push_back(cells); }

  void render(std::ostream& os) const {
    if (cfg_.format == "json") {
      ordered_json doc = meta_;
      ordered_json data = ordered_json::array();
      for (const auto& r : rows_) {
        ordered_json obj;
        for (std::size_t i = 0; i < columns_.size(); ++i) obj[columns_[i]] = r[i];
        data.push_back(obj);
      }
      doc["columns"] = columns_;
      doc["rows"] = data;
      os << doc.dump(2) << '\n';
      return;
    }
    os << "# tool=bergman version=" << kToolVersion << '\n';
    os << "# command=" << command_name(cfg_.command) << '\n';
    os << "# n=" << cfg_.n << " a=" << fmt17(cfg_.a) << " b=" << fmt17(cfg_.b)
       << " c=" << fmt17(cfg_.c) << " d=" << fmt17(cfg_.d) << " p=" << fmt17(cfg_.p)
       << " s=" << fmt17(cfg_.s) << " tau=" << fmt17(cfg_.tau) << " m=" << cfg_.m
       << " radius=" << fmt17(cfg_.radius) << '\n';
    os << "# seed=" << cfg_.seed << " threads=" << cfg_.threads
       << " max_terms=" << cfg_.max_terms << " rel_tol=" << fmt17(cfg_.rel_tol) << '\n';
    for (const auto& [key, value] : meta_.items()) {
      if (key == "tool" || key == "version" || key == "command" || key == "params" ||
          key == "seed" || key == "threads" || key == "tolerances")
        continue;
      os << "# " << key << "=" << (value.is_string() ? value.get<std::string>() : value.dump())
         << '\n';
    }
    for (std::size_t i = 0; i < columns_.size(); ++i)
      os << columns_[i] << (i + 1 < columns_.size() ? ',' : '\n');
    for (const auto& r : rows_) {
      for (std::size_t i = 0; i < r.size(); ++i)
        os << r[i] << (i + 1 < r.size() ? ',' : '\n');
    }
  }

 private:
  const RunConfig& cfg_;
  ordered_json meta_;
  std::vector<std::string> columns_;
  std::vector<std::vector<std::string>> rows_;
};

PointFn make_test_fn(const RunConfig& cfg) {
  if (cfg.f_name == "one") return [](std::span<const cplx>) { return cplx(1.0); };
  if (cfg.f_name == "re_w1") return [](std::span<const cplx> w) { return cplx(w[0].real()); };
  if (cfg.f_name == "abs_sq")
    return [](std::span<const cplx> w) {
      double acc = 0.0;
      for (const cplx& x : w) acc += std::norm(x);
      return cplx(acc);
    };
  if (cfg.f_name == "monomial") {
    std::vector<int> exp = cfg.alpha;
    exp.resize(static_cast<std::size_t>(cfg.n), 0);
    const MultiIndex alpha(exp);
    return [alpha](std::span<const cplx> w) { return monomial(w, alpha); };
  }
  throw std::domain_error("unknown test function: " + cfg.f_name);
}

SeriesControl make_ctrl(const RunConfig& cfg) {
  SeriesControl ctrl;
  ctrl.max_terms = cfg.max_terms;
  ctrl.rel_tol = cfg.rel_tol;
  ctrl.validate();
  return ctrl;
}

QuadratureRule make_command_rule(const RunConfig& cfg, const SpaceParams& p) {
  if (p.n == 1) return make_rule(p, 96, SpherePlan::circle(512));
  return make_rule(p, 48, SpherePlan::monte_carlo(20000, cfg.seed));
}

BallPoint point_from(const std::vector<cplx>& coords, int n, const char* which) {
  if (static_cast<int>(coords.size()) != n)
    throw std::domain_error(std::string("point ") + which + " must have n coordinates");
  return BallPoint(coords);
}

int cmd_kernel(const RunConfig& cfg, Emitter& em) {
  const SpaceParams p(cfg.a, cfg.b, cfg.n);
  const SeriesControl ctrl = make_ctrl(cfg);
  const int count = std::max(cfg.m, 2);
  em.columns({"xi", "k_re", "k_im", "series_re", "series_im", "agreement"});
  for (int i = 0; i < count; ++i) {
    const double x = -cfg.radius + 2.0 * cfg.radius * i / (count - 1);
    const auto ev = kernel_scalar(cplx(x, 0.0), p, ctrl);
    em.row({fmt17(x), fmt17(ev.value.real()), fmt17(ev.value.imag()),
            fmt17(ev.via_series.real()), fmt17(ev.via_series.imag()), fmt17(ev.agreement)});
  }
  return 0;
}

int cmd_moments(const RunConfig& cfg, Emitter& em) {
  const SpaceParams p(cfg.a, cfg.b, cfg.n);
  const int kmax = std::min(std::max(cfg.m, 1), 60);
  const auto [rn, rw] = radial_rule(p, 64);
  const double mu_norm = std::exp(ln_gamma(static_cast<double>(p.n)) -
                                  p.n * std::log(M_PI) - std::log(beta(p.a + 1.0, p.b + p.n)));
  em.columns({"k", "moment", "rule_check"});
  for (int k = 0; k <= kmax; ++k) {
    std::vector<int> exp(static_cast<std::size_t>(p.n), 0);
    exp[0] = k;
    const MultiIndex alpha(exp);
    const double closed = monomial_ball_moment(alpha, alpha, p);
    double radial = 0.0;
    for (std::size_t i = 0; i < rn.size(); ++i)
      radial += rw[i] * std::pow(rn[i], 2.0 * k);
    const double via_rule = mu_norm * radial * monomial_sphere_moment(alpha, p.n);
    em.row({std::to_string(k), fmt17(closed), fmt17(via_rule)});
  }
  return 0;
}

int cmd_berezin(const RunConfig& cfg, Emitter& em) {
  const SpaceParams p(cfg.a, cfg.b, cfg.n);
  const BallPoint z = point_from(cfg.z, cfg.n, "z");
  const auto rule = make_command_rule(cfg, p);
  const KernelEvaluator kv(p, make_ctrl(cfg));
  const PointFn f = make_test_fn(cfg);
  const auto zs = z.span();
  const cplx num = integrate_mu(
      [&](std::span<const cplx> w) { return f(w) * kv.abs_sq(inner(w, zs)); }, rule,
      cfg.threads);
  const cplx value = num / kv(cplx(z.norm_sq(), 0.0)).real();
  em.note("f", cfg.f_name);
  em.columns({"value_re", "value_im"});
  em.row({fmt17(value.real()), fmt17(value.imag())});
  return 0;
}

int cmd_growth(const RunConfig& cfg, Emitter& em) {
  const SpaceParams p(cfg.a, cfg.b, cfg.n);
  const SeriesControl ctrl = make_ctrl(cfg);
  std::vector<std::pair<double, double>> profile;
  em.columns({"t", "i_s"});
  for (int k = 4; k <= 10; ++k) {
    const double t = 1.0 - std::pow(2.0, -k);  // |z|^2 grid
    std::vector<cplx> coords(static_cast<std::size_t>(cfg.n), cplx(0.0));
    coords[0] = std::sqrt(t);
    const double value = i_s(BallPoint(std::move(coords)), cfg.s, p, ctrl);
    profile.emplace_back(t, value);
    em.row({fmt17(t), fmt17(value)});
  }
  const auto rep = classify_growth(profile, cfg.s);
  const char* regime = rep.regime == GrowthRegime::Bounded
                           ? "Bounded"
                           : rep.regime == GrowthRegime::Logarithmic ? "Logarithmic" : "Power";
  em.note("regime", regime);
  em.note("fit_quality", fmt17(rep.fit_quality));
  if (rep.regime == GrowthRegime::Power) em.note("exponent", fmt17(rep.exponent));
  em.note("ambiguous", rep.ambiguous);
  em.note("conditions_C", conditions_C(cfg.a, cfg.b, cfg.c, cfg.d, cfg.n, cfg.p));
  return 0;
}

int cmd_metric(const RunConfig& cfg, Emitter& em) {
  const SpaceParams p(cfg.a, cfg.b, cfg.n);
  const BallPoint z = point_from(cfg.z, cfg.n, "z");
  const BallPoint w = point_from(cfg.w, cfg.n, "w");
  const auto rule = make_command_rule(cfg, p);
  const double dist = distance_upper(z, w, p, 3, 40, make_ctrl(cfg));
  const auto [gap, bound] = lipschitz_check(make_test_fn(cfg), z, w, p, rule, 3, make_ctrl(cfg));
  em.note("f", cfg.f_name);
  em.columns({"distance_upper", "berezin_gap", "lipschitz_bound"});
  em.row({fmt17(dist), fmt17(gap), fmt17(bound)});
  return 0;
}

int emit_root_report(const RootReport& rep, Emitter& em) {
  em.note("method", rep.method == RootMethod::PolynomialSolve ? "PolynomialSolve"
                                                              : "ContourSubdivision");
  em.note("disk_count", rep.disk_count);
  em.note("count_radius", fmt17(rep.count_radius));
  em.note("converged", rep.converged);
  if (!rep.note.empty()) em.note("note", rep.note);
  em.columns({"set", "re", "im", "residual"});
  for (std::size_t i = 0; i < rep.roots.size(); ++i)
    em.row({"root", fmt17(rep.roots[i].real()), fmt17(rep.roots[i].imag()),
            fmt17(rep.residuals[i])});
  return rep.converged ? 0 : 2;
}

int cmd_zeros(const RunConfig& cfg, Emitter& em) {
  const SpaceParams p(cfg.a, cfg.b, cfg.n);
  const bool terminating = q_terminating_coeffs(p).has_value();
  const RootReport rep = terminating ? q_poly_roots(p) : find_zeros_disk(p, cfg.radius);
  return emit_root_report(rep, em);
}

int cmd_figure1(const RunConfig& cfg, Emitter& em) {
  // root sets of Q_{a,b} for b near zero and b near -n, with the unit
  // circle for reference
  const double b_left = -0.01, b_right = -1.9;
  const SpaceParams p_left(cfg.a, b_left, cfg.n);
  const SpaceParams p_right(cfg.a, b_right, cfg.n);
  const auto left = q_poly_roots(p_left);
  const auto right = q_poly_roots(p_right);
  em.note("b_left", fmt17(b_left));
  em.note("b_right", fmt17(b_right));
  em.note("disk_count_left", left.disk_count);
  em.note("disk_count_right", right.disk_count);
  em.columns({"set", "re", "im"});
  for (const cplx& r : left.roots)
    em.row({"root_left", fmt17(r.real()), fmt17(r.imag())});
  for (const cplx& r : right.roots)
    em.row({"root_right", fmt17(r.real()), fmt17(r.imag())});
  for (int i = 0; i < 512; ++i) {
    const double th = 2.0 * M_PI * i / 512.0;
    em.row({"circle", fmt17(std::cos(th)), fmt17(std::sin(th))});
  }
  return (left.converged && right.converged) ? 0 : 2;
}

int cmd_figure2(const RunConfig& cfg, Emitter& em) {
  const double a = cfg.m - 1.0;
  const double b = cfg.tau * cfg.m + 1.0;
  const SpaceParams p(a, b, 1);
  const RootReport rep = q_poly_roots(p);
  const LemniscateSpec spec(cfg.tau);
  em.note("family_a", fmt17(a));
  em.note("family_b", fmt17(b));
  int skipped = 0;
  const auto curve = lemniscate_points(spec, 1024, &skipped);
  const auto stats = cluster_distance(rep, spec, 1024);
  em.note("degree", static_cast<int>(rep.roots.size()));
  em.note("lemniscate_level", fmt17(spec.level));
  em.note("skipped_rays", skipped);
  em.note("converged", rep.converged);
  if (stats.median) em.note("cluster_median", fmt17(*stats.median));
  if (stats.max) em.note("cluster_max", fmt17(*stats.max));
  em.columns({"set", "re", "im"});
  for (const cplx& r : rep.roots) em.row({"root", fmt17(r.real()), fmt17(r.imag())});
  for (const cplx& q : curve) em.row({"curve", fmt17(q.real()), fmt17(q.imag())});
  return rep.converged ? 0 : 2;
}

}  // namespace

int run(const RunConfig& config, std::ostream& out) {
  std::ostringstream buffer;
  int status = 0;
  try {
    if (config.format != "csv" && config.format != "json")
      throw std::domain_error("format must be csv or json");
    if (config.command == RunConfig::Command::Selfcheck) {
      const auto checks = run_selfchecks();
      bool all_ok = true;
      for (const auto& [name, ok] : checks) {
        buffer << (ok ? "ok   " : "FAIL ") << name << '\n';
        all_ok = all_ok && ok;
      }
      buffer << (all_ok ? "selfcheck passed" : "selfcheck FAILED") << '\n';
      status = all_ok ? 0 : 3;
    } else {
      Emitter em(config);
      switch (config.command) {
        case RunConfig::Command::Kernel: status = cmd_kernel(config, em); break;
        case RunConfig::Command::Moments: status = cmd_moments(config, em); break;
        case RunConfig::Command::Berezin: status = cmd_berezin(config, em); break;
        case RunConfig::Command::Growth: status = cmd_growth(config, em); break;
        case RunConfig::Command::Metric: status = cmd_metric(config, em); break;
        case RunConfig::Command::Zeros: status = cmd_zeros(config, em); break;
        case RunConfig::Command::Figure1: status = cmd_figure1(config, em); break;
        case RunConfig::Command::Figure2: status = cmd_figure2(config, em); break;
        case RunConfig::Command::Selfcheck: break;
      }
      em.render(buffer);
    }
  } catch (const std::domain_error& e) {
    out << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::invalid_argument& e) {
    out << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    out << "error: " << e.what() << '\n';
    return 2;
  }

  if (!config.output.empty()) {
    std::ofstream file(config.output, std::ios::binary);
    if (!file) {
      out << "error: cannot open output file " << config.output << '\n';
      return 1;
    }
    file << buffer.str();
  } else {
    out << buffer.str();
  }
  return status;
}

}  // namespace bergman
