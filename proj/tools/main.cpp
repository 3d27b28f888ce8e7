#include <CLI11.hpp>
#include <iostream>
#include <string>

#include "bergman/run.hpp"

namespace {

using bergman::cplx;

// accepts "0.3", "0.3+0.2i", "-0.1-0.7i", "0.5i"
cplx parse_complex(const std::string& text) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
  if (s.empty()) throw CLI::ValidationError("empty complex literal");
  bool imaginary = false;
  if (s.back() == 'i' || s.back() == 'j') {
    imaginary = true;
    s.pop_back();
  }
  // split at the last +/- that is not a leading sign or an exponent sign
  std::size_t split = std::string::npos;
  for (std::size_t i = s.size(); i-- > 1;) {
    if ((s[i] == '+' || s[i] == '-') && s[i - 1] != 'e' && s[i - 1] != 'E') {
      split = i;
      break;
    }
  }
  auto to_d = [](const std::string& part) {
    if (part.empty() || part == "+") return 1.0;
    if (part == "-") return -1.0;
    std::size_t used = 0;
    const double v = std::stod(part, &used);
    if (used != part.size()) throw CLI::ValidationError("bad numeric literal: " + part);
    return v;
  };
  if (!imaginary) return cplx(to_d(s), 0.0);
  if (split == std::string::npos) return cplx(0.0, to_d(s));
  return cplx(to_d(s.substr(0, split)), to_d(s.substr(split)));
}

std::vector<cplx> parse_point(const std::string& text) {
  std::vector<cplx> coords;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t comma = text.find(',', start);
    const std::string part =
        comma == std::string::npos ? text.substr(start) : text.substr(start, comma - start);
    if (!part.empty()) coords.push_back(parse_complex(part));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  if (coords.empty()) throw CLI::ValidationError("no coordinates in point literal");
  return coords;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"modified Bergman space toolkit: kernels, transforms, metric, zeros"};
  app.require_subcommand(1);

  bergman::RunConfig cfg;
  std::string z_text, w_text;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--n", cfg.n, "complex dimension");
    sub->add_option("--a", cfg.a, "weight exponent a > -1");
    sub->add_option("--b", cfg.b, "weight exponent b > -n");
    sub->add_option("--c", cfg.c, "target weight exponent c > -1");
    sub->add_option("--d", cfg.d, "target weight exponent d > -n");
    sub->add_option("--p", cfg.p, "Lebesgue exponent p >= 1");
    sub->add_option("--s", cfg.s, "growth exponent s");
    sub->add_option("--tau", cfg.tau, "lemniscate parameter tau > 0");
    sub->add_option("--m", cfg.m, "family index / grid size");
    sub->add_option("--radius", cfg.radius, "disk radius");
    sub->add_option("--seed", cfg.seed, "Monte-Carlo seed");
    sub->add_option("--format", cfg.format, "csv or json");
    sub->add_option("--output", cfg.output, "output file (default stdout)");
    sub->add_option("--threads", cfg.threads, "worker threads for grid sums");
    sub->add_option("--max-terms", cfg.max_terms, "series term cap");
    sub->add_option("--rel-tol", cfg.rel_tol, "series tail tolerance");
    sub->add_option("--f", cfg.f_name, "test function: one, re_w1, abs_sq, monomial");
    sub->add_option("--alpha", cfg.alpha, "monomial exponents for --f monomial");
    sub->add_option("--z", z_text, "point z, e.g. 0.3+0.1i or 0.3+0i,0.2-0.1i");
    sub->add_option("--w", w_text, "point w");
  };

  using Cmd = bergman::RunConfig::Command;
  const std::pair<const char*, Cmd> commands[] = {
      {"kernel", Cmd::Kernel},     {"moments", Cmd::Moments}, {"berezin", Cmd::Berezin},
      {"growth", Cmd::Growth},     {"metric", Cmd::Metric},   {"zeros", Cmd::Zeros},
      {"figure1", Cmd::Figure1},   {"figure2", Cmd::Figure2}, {"selfcheck", Cmd::Selfcheck}};
  for (const auto& [name, cmd] : commands) {
    CLI::App* sub = app.add_subcommand(name);
    add_common(sub);
    sub->callback([&cfg, cmd] { cfg.command = cmd; });
  }

  try {
    app.parse(argc, argv);
    if (!z_text.empty()) cfg.z = parse_point(z_text);
    if (!w_text.empty()) cfg.w = parse_point(w_text);
    // figure1 is the two-panel b-sweep at n=2, a=10 unless overridden
    if (cfg.command == Cmd::Figure1) {
      CLI::App* sub = app.get_subcommands().front();
      if (sub->count("--n") == 0) cfg.n = 2;
      if (sub->count("--a") == 0) cfg.a = 10.0;
    }
  } catch (const CLI::ParseError& e) {
    return app.exit(e) ? 1 : 0;
  } catch (const CLI::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }

  return bergman::run(cfg, std::cout);
}
