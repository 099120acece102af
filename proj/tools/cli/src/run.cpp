#include "run.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <exception>
#include <functional>
#include <optional>
#include <ostream>
#include <random>
#include <string>
#include <thread>
#include <type_traits>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "parse.hpp"
#include "pointint/bogolyubov.hpp"
#include "pointint/error.hpp"
#include "pointint/gaussian.hpp"
#include "pointint/greenfn.hpp"
#include "pointint/oracle.hpp"
#include "pointint/tau.hpp"

namespace pointint::cli {

namespace {

using ojson = nlohmann::ordered_json;

// a failure that is neither a library error nor a parse error
struct CheckFailed {
  std::string message;
};

// -0.0 prints as "-0.0"; fold it onto +0.0
double clean(double v) { return v + 0.0; }

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", clean(v));
  return buf;
}

ojson cjson(cplx z) { return ojson{{"re", clean(z.real())}, {"im", clean(z.imag())}}; }

double rel_dev(cplx a, cplx b) {
  const double scale = std::max({std::abs(a), std::abs(b), 1e-300});
  return std::abs(a - b) / scale;
}

struct Options {
  std::string m;
  std::string points;
  std::string config;
  std::string at;
  std::vector<std::string> grid;
  std::string output = "json";
  std::string route;
  int dimension = 64;

  // formfactor
  int k = -1;
  int l = -1;
  std::string table;
  std::string lambda = "0";
  std::string mu = "0";
  std::string nu = "0";
  std::optional<double> strength;

  // crosscheck / gaussian-check
  int n = 3;
  std::uint64_t seed = gaussian::kDefaultSeed;
  double tolerance = 1e-9;
  std::string kind = "real";
  std::string dims = "2:2";
  long samples = 1000000;
};

SpectralParameter spectral(const Options& o) {
  if (o.m.empty()) fail(ErrorCode::InvalidArgument, "--m is required");
  const cplx m = parse_complex(o.m, "--m");
  if (!(m.real() > 0.0)) fail(ErrorCode::InvalidArgument, "Re m must be positive");
  return SpectralParameter(m);
}

PointInteractionConfig config(const Options& o) {
  if (o.points.empty() == o.config.empty()) {
    fail(ErrorCode::InvalidArgument, "give exactly one of --points or --config");
  }
  const auto pts = o.points.empty() ? load_points_file(o.config) : parse_points(o.points);
  return PointInteractionConfig(pts);
}

// Evaluates f on every node of the grid; rows are x, columns y. Workers take
// interleaved rows and write into fixed slots, so the output does not depend
// on the worker count. The error reported is the one at the first failing node.
std::vector<cplx> evaluate_grid(const Axis& ax, const Axis& ay,
                                const std::function<cplx(double, double)>& f) {
  const auto rows = static_cast<std::size_t>(ax.nodes());
  const auto cols = static_cast<std::size_t>(ay.nodes());
  if (rows * cols > 10'000'000) fail(ErrorCode::InvalidArgument, "grid larger than 1e7 nodes");
  std::vector<cplx> values(rows * cols);
  std::vector<std::exception_ptr> errors(rows * cols);
  const unsigned workers = static_cast<unsigned>(std::min<std::size_t>(thread_cap(), rows));
  auto work = [&](unsigned w) {
    for (std::size_t i = w; i < rows; i += workers) {
      for (std::size_t j = 0; j < cols; ++j) {
        try {
          values[i * cols + j] = f(ax.node(static_cast<int>(i)), ay.node(static_cast<int>(j)));
        } catch (...) {
          errors[i * cols + j] = std::current_exception();
        }
      }
    }
  };
  if (workers <= 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work, w);
    for (auto& t : pool) t.join();
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return values;
}

void emit_scalar(const Options& o, cplx v, std::ostream& out) {
  if (o.output == "csv") {
    out << "re,im\n" << fmt17(v.real()) << ',' << fmt17(v.imag()) << '\n';
  } else {
    out << ojson{{"value_re", clean(v.real())}, {"value_im", clean(v.imag())}}.dump() << '\n';
  }
}

// --- green ----------------------------------------------------------------------

int cmd_green(const Options& o, std::ostream& out) {
  const SpectralParameter sp = spectral(o);
  const PointInteractionConfig cfg = config(o);
  if (o.at.empty() == o.grid.empty()) fail(ErrorCode::InvalidArgument, "give exactly one of --at or --grid");
  if (o.grid.size() > 2) fail(ErrorCode::InvalidArgument, "--grid may be given at most twice (x, then y)");
  if (o.dimension < 4 || o.dimension > 2048) fail(ErrorCode::InvalidArgument, "--dimension must be in [4, 2048]");

  std::function<cplx(double, double)> f;
  if (o.route == "kernel") {
    f = [&](double x, double y) { return greenfn::resolvent_kernel(sp, cfg, x, y); };
  } else if (o.route == "transfer") {
    f = [&](double x, double y) { return oracle::transfer_green(sp, cfg, x, y); };
  } else {
    bogolyubov::FieldsOptions fo;
    fo.dimension = o.dimension;
    f = [&, fo](double x, double y) { return bogolyubov::resolvent_via_fields(sp, cfg, x, y, fo); };
  }

  if (!o.at.empty()) {
    const auto [x, y] = parse_pair(o.at, "--at");
    const cplx v = f(x, y);
    if (o.output == "csv") {
      out << "x,y,re,im\n"
          << fmt17(x) << ',' << fmt17(y) << ',' << fmt17(v.real()) << ',' << fmt17(v.imag()) << '\n';
    } else {
      out << ojson{{"value_re", clean(v.real())}, {"value_im", clean(v.imag())}}.dump() << '\n';
    }
    return kExitOk;
  }

  const Axis ax = parse_axis(o.grid[0]);
  const Axis ay = o.grid.size() == 2 ? parse_axis(o.grid[1]) : ax;
  const std::vector<cplx> values = evaluate_grid(ax, ay, f);
  const auto cols = static_cast<std::size_t>(ay.nodes());

  if (o.output == "csv") {
    out << "x,y,re,im\n";
    for (int i = 0; i < ax.nodes(); ++i) {
      for (int j = 0; j < ay.nodes(); ++j) {
        const cplx v = values[static_cast<std::size_t>(i) * cols + static_cast<std::size_t>(j)];
        out << fmt17(ax.node(i)) << ',' << fmt17(ay.node(j)) << ',' << fmt17(v.real()) << ','
            << fmt17(v.imag()) << '\n';
      }
    }
    return kExitOk;
  }
  ojson xs = ojson::array();
  ojson ys = ojson::array();
  ojson re = ojson::array();
  ojson im = ojson::array();
  for (int j = 0; j < ay.nodes(); ++j) ys.push_back(clean(ay.node(j)));
  for (int i = 0; i < ax.nodes(); ++i) {
    xs.push_back(clean(ax.node(i)));
    ojson r = ojson::array();
    ojson s = ojson::array();
    for (int j = 0; j < ay.nodes(); ++j) {
      const cplx v = values[static_cast<std::size_t>(i) * cols + static_cast<std::size_t>(j)];
      r.push_back(clean(v.real()));
      s.push_back(clean(v.imag()));
    }
    re.push_back(std::move(r));
    im.push_back(std::move(s));
  }
  out << ojson{{"route", o.route}, {"x", xs}, {"y", ys}, {"value_re", re}, {"value_im", im}}.dump() << '\n';
  return kExitOk;
}

// --- corr / tau -----------------------------------------------------------------

int cmd_corr(const Options& o, std::ostream& out) {
  const SpectralParameter sp = spectral(o);
  const PointInteractionConfig cfg = config(o);
  const cplx v = o.route == "fusion" ? bogolyubov::delta_correlator_via_fusion(sp, cfg)
                                     : greenfn::correlator_det(sp, cfg);
  emit_scalar(o, v, out);
  return kExitOk;
}

int cmd_tau(const Options& o, std::ostream& out) {
  const SpectralParameter sp = spectral(o);
  const PointInteractionConfig cfg = config(o);
  cplx v;
  if (o.route == "via-m") {
    if (cfg.empty()) {
      v = 1.0;
    } else {
      v = tau::tau_via_m(sp, tau::Localization::around(cfg.positions()), cfg);
    }
  } else {
    v = tau::tau_collapsed(sp, cfg);
  }
  emit_scalar(o, v, out);
  return kExitOk;
}

// --- formfactor -----------------------------------------------------------------

int cmd_formfactor(const Options& o, std::ostream& out) {
  bogolyubov::BogolyubovParams p;
  if (o.strength) {
    p = bogolyubov::delta_params(*o.strength, spectral(o));
  } else {
    p = {parse_complex(o.lambda, "--lambda"), parse_complex(o.mu, "--mu"), parse_complex(o.nu, "--nu")};
  }
  const bool single = o.k >= 0 || o.l >= 0;
  if (single == !o.table.empty()) fail(ErrorCode::InvalidArgument, "give either --k and --l, or --table");
  if (single && (o.k < 0 || o.l < 0)) fail(ErrorCode::InvalidArgument, "--k and --l must both be given");

  const auto [max_k, max_l] = single ? std::pair{o.k, o.l} : parse_index_pair(o.table, "--table");
  if (max_k > bogolyubov::kFormFactorMaxIndex || max_l > bogolyubov::kFormFactorMaxIndex) {
    fail(ErrorCode::Overflow, "form-factor indices limited to 170");
  }

  // value(k, l) on the chosen route
  Eigen::MatrixXcd table;
  if (o.route == "recursive") table = bogolyubov::form_factor_table_recursive(max_k, max_l, p);
  auto value = [&](int k, int l) {
    return o.route == "recursive" ? table(k, l) : bogolyubov::form_factor(k, l, p);
  };

  if (single) {
    const cplx v = value(o.k, o.l);
    const cplx me = bogolyubov::matrix_element(o.k, o.l, p);
    if (o.output == "csv") {
      out << "k,l,re,im\n" << o.k << ',' << o.l << ',' << fmt17(v.real()) << ',' << fmt17(v.imag()) << '\n';
    } else {
      out << ojson{{"k", o.k},
                   {"l", o.l},
                   {"value_re", clean(v.real())},
                   {"value_im", clean(v.imag())},
                   {"matrix_element_re", clean(me.real())},
                   {"matrix_element_im", clean(me.imag())}}
                 .dump()
          << '\n';
    }
    return kExitOk;
  }

  if (o.output == "csv") {
    out << "k,l,re,im\n";
    for (int k = 0; k <= max_k; ++k) {
      for (int l = 0; l <= max_l; ++l) {
        const cplx v = value(k, l);
        out << k << ',' << l << ',' << fmt17(v.real()) << ',' << fmt17(v.imag()) << '\n';
      }
    }
    return kExitOk;
  }
  ojson re = ojson::array();
  ojson im = ojson::array();
  for (int k = 0; k <= max_k; ++k) {
    ojson r = ojson::array();
    ojson s = ojson::array();
    for (int l = 0; l <= max_l; ++l) {
      const cplx v = value(k, l);
      r.push_back(clean(v.real()));
      s.push_back(clean(v.imag()));
    }
    re.push_back(std::move(r));
    im.push_back(std::move(s));
  }
  out << ojson{{"route", o.route}, {"max_k", max_k}, {"max_l", max_l}, {"value_re", re}, {"value_im", im}}.dump()
      << '\n';
  return kExitOk;
}

// --- crosscheck -----------------------------------------------------------------

struct RouteCheck {
  std::string quantity;
  std::optional<std::pair<double, double>> at;
  std::vector<std::pair<std::string, cplx>> routes;

  double max_dev() const {
    double d = 0.0;
    for (std::size_t i = 0; i < routes.size(); ++i) {
      for (std::size_t j = i + 1; j < routes.size(); ++j) d = std::max(d, rel_dev(routes[i].second, routes[j].second));
    }
    return d;
  }
};

int cmd_crosscheck(const Options& o, std::ostream& out) {
  if (o.n < 1 || o.n > 8) fail(ErrorCode::InvalidArgument, "--n must be in [1, 8]");
  if (!(o.tolerance > 0.0)) fail(ErrorCode::InvalidArgument, "--tolerance must be positive");
  if (o.dimension < 16 || o.dimension > 1024) fail(ErrorCode::InvalidArgument, "--dimension must be in [16, 1024]");

  std::mt19937_64 rng(o.seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  auto draw = [&](double lo, double hi) { return lo + (hi - lo) * unit(rng); };

  // m, positions and strengths are always drawn so that --m alone does not
  // shift the random configuration
  std::vector<PointInteraction> pts;
  double a = 0.0;
  for (int j = 0; j < o.n; ++j) {
    if (j > 0) a += draw(0.2, 3.0);
    pts.push_back({a, draw(0.2, 5.0)});
  }
  const double m_drawn = draw(0.2, 4.0);
  if (!o.points.empty() || !o.config.empty()) pts = o.points.empty() ? load_points_file(o.config) : parse_points(o.points);
  const SpectralParameter sp = o.m.empty() ? SpectralParameter(m_drawn) : spectral(o);
  const PointInteractionConfig cfg(pts);
  if (cfg.empty()) fail(ErrorCode::InvalidArgument, "configuration has no nonzero strengths");

  std::vector<RouteCheck> checks;
  bogolyubov::FieldsOptions fo;
  fo.dimension = o.dimension;
  const auto pos = cfg.positions();
  const Axis axis{pos.front() - 1.0, pos.back() + 1.0, 2};
  for (int i = 0; i < axis.nodes(); ++i) {
    for (int j = i; j < axis.nodes(); ++j) {
      const double x = axis.node(i);
      const double y = axis.node(j);
      checks.push_back({"green",
                        std::pair{x, y},
                        {{"kernel", greenfn::resolvent_kernel(sp, cfg, x, y)},
                         {"transfer", oracle::transfer_green(sp, cfg, x, y)},
                         {"fields", bogolyubov::resolvent_via_fields(sp, cfg, x, y, fo)}}});
    }
  }
  checks.push_back({"correlator",
                    std::nullopt,
                    {{"det", greenfn::correlator_det(sp, cfg)}, {"fusion", bogolyubov::delta_correlator_via_fusion(sp, cfg)}}});
  const tau::FinCheck fin = tau::fin_check(sp, cfg);
  checks.push_back({"tau",
                    std::nullopt,
                    {{"collapsed", tau::tau_collapsed(sp, cfg)},
                     {"via_m", tau::tau_via_m(sp, tau::Localization::around(pos), cfg)},
                     {"correlator_ratio", fin.correlator_ratio_pow}}});

  double worst = 0.0;
  for (const auto& c : checks) worst = std::max(worst, c.max_dev());
  const bool pass = worst < o.tolerance;

  if (o.output == "csv") {
    out << "quantity,x,y,route,re,im\n";
    for (const auto& c : checks) {
      for (const auto& [route, v] : c.routes) {
        out << c.quantity << ',' << (c.at ? fmt17(c.at->first) : "") << ',' << (c.at ? fmt17(c.at->second) : "")
            << ',' << route << ',' << fmt17(v.real()) << ',' << fmt17(v.imag()) << '\n';
      }
    }
  } else {
    ojson jpts = ojson::array();
    for (std::size_t j = 0; j < cfg.size(); ++j) jpts.push_back(ojson{{"a", cfg.position(j)}, {"V", cfg.strength(j)}});
    ojson jchecks = ojson::array();
    for (const auto& c : checks) {
      ojson jc{{"quantity", c.quantity}};
      if (c.at) {
        jc["x"] = clean(c.at->first);
        jc["y"] = clean(c.at->second);
      }
      ojson routes = ojson::object();
      for (const auto& [route, v] : c.routes) routes[route] = cjson(v);
      jc["routes"] = std::move(routes);
      jc["max_rel_dev"] = c.max_dev();
      jchecks.push_back(std::move(jc));
    }
    out << ojson{{"seed", o.seed},
                 {"n", static_cast<int>(cfg.size())},
                 {"m", cjson(sp.m())},
                 {"points", jpts},
                 {"fields_dimension", o.dimension},
                 {"checks", jchecks},
                 {"max_rel_dev", worst},
                 {"tolerance", o.tolerance},
                 {"pass", pass}}
               .dump()
        << '\n';
  }
  if (!pass) throw CheckFailed{"max relative deviation " + fmt17(worst) + " exceeds tolerance " + fmt17(o.tolerance)};
  return kExitOk;
}

// --- gaussian-check -------------------------------------------------------------

template <class Scalar>
ojson scalar_json(Scalar v) {
  if constexpr (std::is_same_v<Scalar, double>) {
    return clean(v);
  } else {
    return cjson(v);
  }
}

template <class Scalar>
int gaussian_report(const Options& o, int m, int n, std::ostream& out) {
  std::mt19937_64 rng(o.seed);
  const auto q = gaussian::random_quadratic_form<Scalar>(m, n, rng);
  const auto schur = gaussian::schur_partition_identity(q);
  const auto krein = gaussian::krein_matrices(q);
  const double krein_dev = (krein.lhs - krein.rhs).cwiseAbs().maxCoeff() / std::max(1.0, krein.lhs.cwiseAbs().maxCoeff());
  const unsigned threads = std::min(thread_cap(), 64u);
  const gaussian::McReport mc =
      gaussian::moment_check_mc(q, static_cast<std::size_t>(o.samples), o.seed, threads);

  const bool identities_ok = schur.residual() < 1e-10 && krein_dev < 1e-10;
  const bool pass = identities_ok && mc.all_pass();

  if (o.output == "csv") {
    out << "name,estimate,expected,std_error,pass\n";
    for (const auto& c : mc.checks) {
      out << c.name << ',' << fmt17(c.estimate) << ',' << fmt17(c.expected) << ',' << fmt17(c.std_error) << ','
          << (c.pass() ? "true" : "false") << '\n';
    }
  } else {
    ojson jchecks = ojson::array();
    for (const auto& c : mc.checks) {
      jchecks.push_back(ojson{{"name", c.name},
                              {"estimate", clean(c.estimate)},
                              {"expected", clean(c.expected)},
                              {"std_error", c.std_error},
                              {"pass", c.pass()}});
    }
    out << ojson{{"kind", o.kind},
                 {"dims", {m, n}},
                 {"seed", o.seed},
                 {"samples", o.samples},
                 {"schur",
                  {{"block", scalar_json(schur.block)},
                   {"via_a", scalar_json(schur.via_a)},
                   {"via_b", scalar_json(schur.via_b)},
                   {"residual", schur.residual()}}},
                 {"krein", {{"max_rel_dev", krein_dev}}},
                 {"mc", {{"checks", jchecks}, {"skipped", mc.skipped}, {"all_pass", mc.all_pass()}}},
                 {"pass", pass}}
               .dump()
        << '\n';
  }
  if (!pass) throw CheckFailed{identities_ok ? "Monte Carlo check outside 4 sigma" : "Schur/Krein identity residual above 1e-10"};
  return kExitOk;
}

int cmd_gaussian(const Options& o, std::ostream& out) {
  const auto [m, n] = parse_index_pair(o.dims, "--dims");
  if (m < 1 || n < 1 || m > 4 || n > 4) fail(ErrorCode::InvalidArgument, "--dims must be M:N with 1 <= M, N <= 4");
  if (o.samples < 2 || o.samples > 100'000'000) fail(ErrorCode::InvalidArgument, "--samples must be in [2, 1e8]");
  if (o.kind == "complex") return gaussian_report<cplx>(o, m, n, out);
  return gaussian_report<double>(o, m, n, out);
}

void error_line(std::ostream& err, std::string_view code, std::string_view message) {
  err << ojson{{"error", code}, {"message", message}}.dump() << '\n';
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Point-interaction resolvents, Bogolyubov form factors and tau functions", "pointint"};
  app.require_subcommand(1);

  auto add_model = [&](CLI::App* sub) {
    sub->add_option("--m", o.m, "spectral parameter, re or re+imi (Re m > 0)");
    auto* pts = sub->add_option("--points", o.points, "interactions a:V,a:V,...");
    sub->add_option("--config", o.config, "JSON file: [{\"a\": .., \"V\": ..}, ...]")->excludes(pts);
  };
  auto add_output = [&](CLI::App* sub) {
    sub->add_option("--output", o.output, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  };

  auto* green = app.add_subcommand("green", "perturbed resolvent kernel G(x, y)");
  add_model(green);
  green->add_option("--at", o.at, "single point x,y");
  green->add_option("--grid", o.grid, "xmin:xmax:steps; once for both axes or twice (x then y)")
      ->expected(1)
      ->multi_option_policy(CLI::MultiOptionPolicy::TakeAll);
  o.route = "kernel";
  green->add_option("--route", o.route, "kernel, transfer or fields")
      ->check(CLI::IsMember({"kernel", "transfer", "fields"}));
  green->add_option("--dimension", o.dimension, "Fock truncation for the fields route");
  add_output(green);

  auto* corr = app.add_subcommand("corr", "delta-field correlator <O_V1(a1)...O_VN(aN)>");
  add_model(corr);
  std::string corr_route = "det";
  corr->add_option("--route", corr_route, "det or fusion")->check(CLI::IsMember({"det", "fusion"}));
  add_output(corr);

  auto* tau_cmd = app.add_subcommand("tau", "tau function");
  add_model(tau_cmd);
  std::string tau_route = "collapsed";
  tau_cmd->add_option("--route", tau_route, "collapsed or via-m")->check(CLI::IsMember({"collapsed", "via-m"}));
  add_output(tau_cmd);

  auto* ff = app.add_subcommand("formfactor", "form factors F_{k,l}");
  ff->add_option("--k", o.k, "row index");
  ff->add_option("--l", o.l, "column index");
  ff->add_option("--table", o.table, "all F_{k,l} up to K:L");
  auto* lam = ff->add_option("--lambda", o.lambda, "lambda (complex)");
  auto* mu = ff->add_option("--mu", o.mu, "mu (complex)");
  auto* nu = ff->add_option("--nu", o.nu, "nu (complex)");
  ff->add_option("--V", o.strength, "use delta-field parameters for strength V (needs --m)")
      ->excludes(lam)
      ->excludes(mu)
      ->excludes(nu);
  ff->add_option("--m", o.m, "spectral parameter for --V");
  std::string ff_route = "closed";
  ff->add_option("--route", ff_route, "closed or recursive")->check(CLI::IsMember({"closed", "recursive"}));
  add_output(ff);

  auto* cross = app.add_subcommand("crosscheck", "compare every route on one random configuration");
  cross->add_option("--n", o.n, "number of points (random configuration)");
  cross->add_option("--seed", o.seed, "random seed");
  add_model(cross);
  cross->add_option("--tolerance", o.tolerance, "largest accepted relative deviation");
  int cross_dim = 80;
  cross->add_option("--dimension", cross_dim, "Fock truncation for the fields route");
  add_output(cross);

  auto* gauss = app.add_subcommand("gaussian-check", "Schur, Krein and Monte Carlo checks on a random instance");
  gauss->add_option("--kind", o.kind, "real or complex")->check(CLI::IsMember({"real", "complex"}));
  gauss->add_option("--dims", o.dims, "M:N block sizes, each 1..4");
  gauss->add_option("--samples", o.samples, "Monte Carlo samples");
  gauss->add_option("--seed", o.seed, "random seed");
  add_output(gauss);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    error_line(err, "InvalidArgument", e.what());
    return kExitValidation;
  }

  try {
    thread_cap();  // reject a malformed POINTINT_THREADS up front
    if (green->parsed()) return cmd_green(o, out);
    if (corr->parsed()) {
      o.route = corr_route;
      return cmd_corr(o, out);
    }
    if (tau_cmd->parsed()) {
      o.route = tau_route;
      return cmd_tau(o, out);
    }
    if (ff->parsed()) {
      o.route = ff_route;
      return cmd_formfactor(o, out);
    }
    if (cross->parsed()) {
      o.dimension = cross_dim;
      return cmd_crosscheck(o, out);
    }
    if (gauss->parsed()) return cmd_gaussian(o, out);
  } catch (const Error& e) {
    error_line(err, to_string(e.code()), e.what());
    return e.is_validation() ? kExitValidation : kExitNumerical;
  } catch (const CheckFailed& e) {
    error_line(err, "CheckFailed", e.message);
    return kExitNumerical;
  } catch (const std::exception& e) {
    error_line(err, "Internal", e.what());
    return kExitNumerical;
  }
  return kExitValidation;
}

}  // namespace pointint::cli
