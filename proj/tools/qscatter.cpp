// qscatter: command-line front end for the quaternionic scattering library.
//
// Exit codes: 0 success, 2 input error, 3 numeric domain error.

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "qscatter/qscatter.hpp"

namespace {

constexpr int exit_input_error = 2;
constexpr int exit_domain_error = 3;

struct Options {
  std::string spec_path;
  std::optional<double> k;
  std::optional<double> radius;
  std::optional<int> lmax;
  std::optional<double> xi;
  std::size_t theta_points = 181;
  std::string sweep;
  std::string out_path;
  std::string radii;
  bool degrees = false;
  bool clamp = false;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::invalid_argument("cannot open spec file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::size_t quadrature_order() {
  const char* env = std::getenv("QSCATTER_QUAD_ORDER");
  if (env == nullptr || *env == '\0') return qscatter::default_quadrature_order;
  long n = 0;
  try {
    n = qscatter::csv::parse_integer(env, 1, 1);
  } catch (const qscatter::ParseError&) {
    throw std::invalid_argument("QSCATTER_QUAD_ORDER must be an integer");
  }
  if (n < 2 || n > 100000) throw std::invalid_argument("QSCATTER_QUAD_ORDER must be in [2, 100000]");
  return static_cast<std::size_t>(n);
}

qscatter::SaturationPolicy policy(const Options& o) {
  return o.clamp ? qscatter::SaturationPolicy::clamp : qscatter::SaturationPolicy::reject;
}

double to_radians(const Options& o, double angle) { return o.degrees ? angle * std::numbers::pi / 180.0 : angle; }

/// The model spec from --spec, with --k / --radius / --lmax / --xi overriding,
/// or a hard sphere built from those flags alone.
qscatter::ModelSpec resolve_spec(const Options& o, bool radius_is_sphere) {
  qscatter::ModelSpec spec;
  if (!o.spec_path.empty()) {
    try {
      spec = qscatter::parse_model_spec(read_file(o.spec_path), o.degrees);
    } catch (const qscatter::ParseError& e) {
      throw std::invalid_argument(o.spec_path + ":" + e.what());
    }
  } else {
    if (!o.k || !o.radius) throw std::invalid_argument("give --spec FILE, or --k and --radius for a hard sphere");
    spec.hard_sphere.emplace();
  }
  if (o.k) spec.k = *o.k;
  if (spec.hard_sphere) {
    if (o.radius && (radius_is_sphere || o.spec_path.empty())) spec.hard_sphere->R = *o.radius;
    if (o.lmax) spec.hard_sphere->ell_max = *o.lmax;
    if (o.xi) spec.hard_sphere->xi = to_radians(o, *o.xi);
  }
  if (!(spec.k > 0.0)) throw std::invalid_argument("k must be positive");
  if (spec.hard_sphere && !(spec.hard_sphere->R > 0.0)) throw std::invalid_argument("radius must be positive");
  return spec;
}

std::string params_string(const Options& o, const std::vector<std::string>& extra) {
  using qscatter::csv::format_double;
  std::string out;
  auto add = [&out](const std::string& kv) {
    if (!out.empty()) out += ' ';
    out += kv;
  };
  if (!o.spec_path.empty()) add("spec=" + o.spec_path);
  if (o.k) add("k=" + format_double(*o.k));
  if (o.radius) add("radius=" + format_double(*o.radius));
  if (o.lmax) add("lmax=" + std::to_string(*o.lmax));
  if (o.xi) add("xi=" + format_double(*o.xi));
  add(std::string("degrees=") + (o.degrees ? "1" : "0"));
  add(std::string("clamp-saturated=") + (o.clamp ? "1" : "0"));
  for (const auto& e : extra) add(e);
  return out;
}

std::vector<double> parse_radii(const std::string& text) {
  std::vector<double> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto comma = text.find(',', start);
    const auto piece = text.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
    try {
      out.push_back(qscatter::csv::parse_double(piece, 1, start + 1));
    } catch (const qscatter::ParseError& e) {
      throw std::invalid_argument(std::string("bad --radii: ") + e.what());
    }
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

void emit(const Options& o, const std::string& text) {
  if (o.out_path.empty()) {
    std::cout << text;
    std::cout.flush();
    return;
  }
  std::ofstream out(o.out_path, std::ios::binary);
  if (!out) throw std::invalid_argument("cannot open output file '" + o.out_path + "'");
  out << text;
  if (!out) throw std::invalid_argument("failed writing '" + o.out_path + "'");
}

std::string run_amplitude(const Options& o) {
  const auto spec = resolve_spec(o, true);
  const auto model = qscatter::to_scattering_model(spec, policy(o));
  qscatter::AmplitudeOptions opt;
  opt.theta_points = o.theta_points;
  opt.degrees = o.degrees;
  return qscatter::cmd_amplitude(model, opt, params_string(o, {"theta-points=" + std::to_string(o.theta_points)}));
}

std::string run_cross_section(const Options& o) {
  const std::size_t order = quadrature_order();
  const auto rule = qscatter::gauss_legendre(order);
  const std::vector<std::string> extra{"sweep=" + o.sweep, "quad-order=" + std::to_string(order)};
  if (o.sweep.empty()) {
    const auto model = qscatter::to_scattering_model(resolve_spec(o, true), policy(o));
    return qscatter::cmd_cross_section(std::span(&model, 1), rule, params_string(o, {extra[1]}));
  }
  const auto values = qscatter::parse_sweep(o.sweep);
  std::vector<qscatter::ScatteringModel> models;
  if (o.spec_path.empty() || resolve_spec(o, true).hard_sphere) {
    // Sweep values are kR for a hard sphere; --k is not needed.
    Options base = o;
    if (!base.k) base.k = 1.0;
    const auto spec = resolve_spec(base, true);
    const std::optional<int> lmax = spec.hard_sphere->ell_max;
    models = qscatter::hard_sphere_sweep(spec.hard_sphere->R, values, lmax, spec.hard_sphere->xi, policy(o));
  } else {
    // Sweep values are k for explicit mode lists.
    const auto spec = resolve_spec(o, true);
    for (double k : values) models.emplace_back(k, spec.modes);
  }
  return qscatter::cmd_cross_section(models, rule, params_string(o, extra));
}

std::string run_hard_sphere(const Options& o) {
  const auto spec = resolve_spec(o, true);
  if (!spec.hard_sphere) throw std::invalid_argument("hard-sphere needs a [hard_sphere] spec or --k and --radius");
  return qscatter::cmd_hard_sphere(qscatter::hard_sphere_config(spec, policy(o)), params_string(o, {}));
}

std::string run_match(const Options& o) {
  const auto spec = resolve_spec(o, false);
  double a = 0.0;
  if (o.radius) {
    a = *o.radius;
  } else if (spec.hard_sphere) {
    a = spec.hard_sphere->R;
  } else {
    throw std::invalid_argument("match needs --radius (the matching radius a)");
  }
  const auto model = qscatter::to_scattering_model(spec, policy(o));
  return qscatter::cmd_match(model, a, params_string(o, {"a=" + qscatter::csv::format_double(a)}));
}

std::string run_optical(const Options& o) {
  const std::size_t order = quadrature_order();
  const auto model = qscatter::to_scattering_model(resolve_spec(o, true), policy(o));
  const auto radii = o.radii.empty() ? qscatter::default_radii(model.k()) : parse_radii(o.radii);
  std::string radii_text;
  for (double r : radii) radii_text += (radii_text.empty() ? "" : ",") + qscatter::csv::format_double(r);
  return qscatter::cmd_optical(model, radii, qscatter::gauss_legendre(order),
                               params_string(o, {"radii=" + radii_text, "quad-order=" + std::to_string(order)}));
}

void add_model_options(CLI::App* cmd, Options& o) {
  cmd->add_option("--spec", o.spec_path, "Model specification file");
  cmd->add_option("--k", o.k, "Wave number (overrides the spec file)");
  cmd->add_option("--radius", o.radius, "Hard-sphere radius R (for match: the matching radius a)");
  cmd->add_option("--lmax", o.lmax, "Highest partial wave for a hard sphere")->check(CLI::Range(0, qscatter::max_bessel_order));
  cmd->add_option("--xi", o.xi, "Quaternionic phase applied to every hard-sphere channel");
  cmd->add_flag("--degrees", o.degrees, "Angles in spec files and CSV are degrees");
  cmd->add_flag("--clamp-saturated", o.clamp, "Clamp theta_pol to +-pi/2 where |y_l(kR)| < 1 instead of failing");
  cmd->add_option("--out", o.out_path, "Write CSV here instead of stdout");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Quaternionic elastic scattering: amplitudes, cross sections, matching and optical checks"};
  app.set_version_flag("--version", std::string(qscatter::version));
  app.require_subcommand(1);

  Options o;
  auto* amplitude = app.add_subcommand("amplitude", "Scattering amplitude F(theta) on an angle grid");
  add_model_options(amplitude, o);
  amplitude->add_option("--theta-points", o.theta_points, "Number of angles in [0, pi]")->check(CLI::Range(2, 1000000));

  auto* cross = app.add_subcommand("cross-section", "Total cross sections, optionally over a sweep");
  add_model_options(cross, o);
  cross->add_option("--sweep", o.sweep, "START:STOP:N over kR (hard sphere) or k (mode list)");

  auto* hard = app.add_subcommand("hard-sphere", "Per-channel hard-sphere phase shifts and polarization angles");
  add_model_options(hard, o);

  auto* match = app.add_subcommand("match", "Matching constants against the numerical log-derivative");
  add_model_options(match, o);

  auto* optical = app.add_subcommand("optical", "Cross-section consistency report with flux residuals");
  add_model_options(optical, o);
  optical->add_option("--radii", o.radii, "Comma-separated radii (default kr = 50,100,200,400)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    std::cerr << "qscatter: " << e.what() << "\n";
    return exit_input_error;
  }

  try {
    std::string text;
    if (*amplitude) text = run_amplitude(o);
    if (*cross) text = run_cross_section(o);
    if (*hard) text = run_hard_sphere(o);
    if (*match) text = run_match(o);
    if (*optical) text = run_optical(o);
    emit(o, text);
  } catch (const qscatter::DomainError& e) {
    std::cerr << "qscatter: numeric domain error: " << e.what() << "\n";
    return exit_domain_error;
  } catch (const qscatter::ParseError& e) {
    std::cerr << "qscatter: " << e.what() << "\n";
    return exit_input_error;
  } catch (const std::invalid_argument& e) {
    std::cerr << "qscatter: " << e.what() << "\n";
    return exit_input_error;
  } catch (const std::exception& e) {
    std::cerr << "qscatter: " << e.what() << "\n";
    return exit_domain_error;
  }
  return 0;
}
