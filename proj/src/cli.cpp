#include "boxkernel/cli.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <ostream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "boxkernel/filtering.hpp"
#include "boxkernel/graphon.hpp"
#include "boxkernel/io.hpp"
#include "boxkernel/learn.hpp"
#include "boxkernel/localize.hpp"
#include "boxkernel/log.hpp"
#include "boxkernel/random.hpp"
#include "boxkernel/verify.hpp"

namespace boxkernel::cli {

namespace {

using json = nlohmann::json;
namespace fs = std::filesystem;

constexpr int kConfigVersion = 1;

// Invariant checks that ran to completion but did not hold.
class InvariantFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Strict view of one JSON object. Every key read is echoed into the resolved
// config (with defaults filled in); finish() rejects keys nobody asked for.
class Section {
 public:
  Section(const json* node, json* echo, std::string path) : node_(node), echo_(echo), path_(std::move(path)) {
    if (node_ && !node_->is_object()) fail("must be an object");
    if (echo_->is_null()) *echo_ = json::object();
  }

  const std::string& path() const { return path_; }

  bool has(const std::string& key) const { return node_ && node_->contains(key); }

  const json* raw(const std::string& key) {
    seen_.insert(key);
    return has(key) ? &node_->at(key) : nullptr;
  }

  double number(const std::string& key, double fallback) {
    const json* v = raw(key);
    if (v && !v->is_number()) fail(key, "must be a number");
    const double x = v ? v->get<double>() : fallback;
    if (!std::isfinite(x)) fail(key, "must be finite");
    (*echo_)[key] = x;
    return x;
  }

  int integer(const std::string& key, int fallback, int lo, int hi) {
    const json* v = raw(key);
    if (v && !v->is_number_integer()) fail(key, "must be an integer");
    const long long x = v ? v->get<long long>() : fallback;
    if (x < lo || x > hi) {
      std::ostringstream os;
      os << "must lie in [" << lo << ", " << hi << "], got " << x;
      fail(key, os.str());
    }
    (*echo_)[key] = x;
    return static_cast<int>(x);
  }

  std::string text(const std::string& key, const std::string& fallback) {
    const json* v = raw(key);
    if (v && !v->is_string()) fail(key, "must be a string");
    const std::string s = v ? v->get<std::string>() : fallback;
    (*echo_)[key] = s;
    return s;
  }

  bool flag(const std::string& key, bool fallback) {
    const json* v = raw(key);
    if (v && !v->is_boolean()) fail(key, "must be true or false");
    const bool b = v ? v->get<bool>() : fallback;
    (*echo_)[key] = b;
    return b;
  }

  Section child(const std::string& key) {
    const json* v = raw(key);
    return Section(v, &(*echo_)[key], path_ + "." + key);
  }

  json& echo(const std::string& key) { return (*echo_)[key]; }

  void finish() const {
    if (!node_) return;
    for (auto it = node_->begin(); it != node_->end(); ++it)
      if (!seen_.count(it.key())) fail(it.key(), "unknown key");
  }

  [[noreturn]] void fail(const std::string& key, const std::string& why) const {
    throw ConfigError(path_ + "." + key + ": " + why);
  }
  [[noreturn]] void fail(const std::string& why) const { throw ConfigError(path_ + ": " + why); }

 private:
  const json* node_;
  json* echo_;
  std::string path_;
  std::set<std::string> seen_;
};

json complex_json(cplx z) { return json::array({z.real(), z.imag()}); }

cplx parse_complex_json(const json& j, const std::string& where) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
    return {j[0].get<double>(), j[1].get<double>()};
  if (j.is_string()) {
    try {
      return io::parse_complex(j.get<std::string>());
    } catch (const InvalidArgument& e) {
      throw ConfigError(where + ": " + e.what());
    }
  }
  throw ConfigError(where + ": expected a number, a [re, im] pair or an \"a+bj\" string");
}

std::vector<cplx> complex_list(Section& s, const std::string& key) {
  const json* v = s.raw(key);
  if (!v || !v->is_array()) s.fail(key, "must be an array");
  std::vector<cplx> out;
  for (std::size_t i = 0; i < v->size(); ++i)
    out.push_back(parse_complex_json((*v)[i], s.path() + "." + key + "[" + std::to_string(i) + "]"));
  json& e = s.echo(key) = json::array();
  for (const cplx& z : out) e.push_back(complex_json(z));
  return out;
}

std::vector<double> real_list(Section& s, const std::string& key) {
  const json* v = s.raw(key);
  if (!v || !v->is_array()) s.fail(key, "must be an array");
  std::vector<double> out;
  for (const auto& x : *v) {
    if (!x.is_number()) s.fail(key, "entries must be numbers");
    out.push_back(x.get<double>());
  }
  s.echo(key) = out;
  return out;
}

struct KernelDefaults {
  std::string name;
  KernelRole role;
  std::string transform;
};

struct Context {
  const Options& options;
  std::ostream& out;
  json config;
  json echo;
  Section root;
  Grid grid;
  std::uint64_t seed;
  Random rng;
  fs::path out_dir;

  Context(const Options& opts, std::ostream& o, json cfg)
      : options(opts),
        out(o),
        config(std::move(cfg)),
        echo(json::object()),
        root(&config, &echo, "config"),
        grid(0, 1, 2),
        seed(0),
        rng(0) {}
};

std::map<std::string, double> read_params(Section& s) {
  std::map<std::string, double> params;
  const json* v = s.raw("params");
  if (!v) return params;
  if (!v->is_object()) s.fail("params", "must be an object of numbers");
  for (auto it = v->begin(); it != v->end(); ++it) {
    if (!it.value().is_number()) s.fail("params." + it.key(), "must be a number");
    params[it.key()] = it.value().get<double>();
  }
  return params;
}

KernelCatalogEntry read_catalog(Section& s, const std::string& default_name) {
  const std::string name = s.text("name", default_name);
  const KernelCatalogEntry entry = catalog_entry(name, read_params(s));
  s.echo("params") = entry.params;
  return entry;
}

GridKernel build_kernel(Context& ctx, const KernelDefaults& d) {
  Section s = ctx.root.child("kernel");
  GridKernel raw = [&] {
    const std::string role_name = s.text("role", std::string(to_string(d.role)));
    KernelRole role;
    try {
      role = parse_role(role_name);
    } catch (const InvalidArgument& e) {
      s.fail("role", e.what());
    }
    if (s.has("table")) {
      if (s.has("name") || s.has("params")) s.fail("table", "give either a catalog name or a table, not both");
      const std::string path = s.text("table", "");
      return sample(io::read_kernel_table(path), ctx.grid, role);
    }
    return sample(read_catalog(s, d.name), ctx.grid, role);
  }();
  const std::string transform = s.text("transform", d.transform);
  s.finish();
  if (transform == "none") return raw;
  if (transform == "induced") return induced_kernel(raw);
  if (transform == "box_square") return induced_graphon_kernel(raw, 1);
  if (transform == "to_graphon") return kernel_to_graphon(raw);
  s.fail("transform", "expected none, induced, box_square or to_graphon, got '" + transform + "'");
}

Signal build_signal(Context& ctx, Section s, const GridKernel& k, const std::string& default_kind) {
  const Grid& g = ctx.grid;
  const std::string kind = s.text("kind", default_kind);
  Signal f = Signal::zeros(g);
  if (kind == "random") {
    f = ctx.rng.complex_signal(g);
  } else if (kind == "random_range") {
    f = apply_operator(k, ctx.rng.complex_signal(g));
  } else if (kind == "function") {
    const std::string name = s.text("name", "linear");
    const double freq = s.number("freq", 1.0);
    std::function<double(double)> fn;
    if (name == "linear")
      fn = [](double u) { return u; };
    else if (name == "constant")
      fn = [](double) { return 1.0; };
    else if (name == "sine")
      fn = [freq](double u) { return std::sin(freq * M_PI * u); };
    else if (name == "cosine")
      fn = [freq](double u) { return std::cos(freq * M_PI * u); };
    else
      s.fail("name", "expected linear, constant, sine or cosine, got '" + name + "'");
    f = Signal::sample(g, [&](double u) { return cplx(fn(u)); });
  } else if (kind == "sections") {
    const std::vector<double> at = real_list(s, "centers");
    const std::vector<cplx> coeffs = complex_list(s, "coeffs");
    if (at.size() != coeffs.size()) s.fail("coeffs", "needs one coefficient per center");
    std::vector<int> centers;
    for (double x : at) centers.push_back(g.nearest_index(x));
    f = expand(centers, coeffs, k);
  } else if (kind == "csv") {
    f = io::read_signal(s.text("path", ""), g);
  } else {
    s.fail("kind", "expected random, random_range, function, sections or csv, got '" + kind + "'");
  }
  if (s.has("scale")) f *= parse_complex_json(*s.raw("scale"), s.path() + ".scale");
  s.finish();
  return f;
}

int modes_option(Section& s, const std::string& key, int fallback, int n) {
  const json* v = s.raw(key);
  if (v && v->is_string()) {
    if (v->get<std::string>() != "all") s.fail(key, "must be a positive integer or \"all\"");
    s.echo(key) = "all";
    return n;
  }
  return s.integer(key, std::min(fallback, n), 1, n);
}

void write_property_rows(io::CsvWriter& w, const std::vector<PropertyResult>& rows) {
  for (const auto& r : rows) w.cell(r.name).cell(r.value).cell(r.tolerance).cell(r.pass ? 1 : 0).end_row();
}

bool all_pass(const std::vector<PropertyResult>& rows) {
  return std::all_of(rows.begin(), rows.end(), [](const PropertyResult& r) { return r.pass; });
}

PropertyResult property(std::string name, double value, double tol) {
  return {std::move(name), value, tol, std::isfinite(value) && value <= tol};
}

std::string failed_names(const std::vector<PropertyResult>& rows) {
  std::string s;
  for (const auto& r : rows)
    if (!r.pass) s += (s.empty() ? "" : ", ") + r.name;
  return s;
}

// ---- subcommands ----

int cmd_spectrum(Context& ctx) {
  const GridKernel k = build_kernel(ctx, {"min", KernelRole::graphon, "none"});
  Section s = ctx.root.child("spectrum");
  const int m = modes_option(s, "modes", 10, ctx.grid.size());
  s.finish();
  const SpectralDecomposition dec = decompose(k, m);

  io::CsvWriter sp(ctx.out_dir / "spectrum.csv", {"index", "eigenvalue"});
  for (int i = 0; i < dec.size(); ++i) sp.cell(i + 1).cell(dec.eigenvalue(i)).end_row();

  std::vector<std::string> header{"node"};
  for (int i = 0; i < dec.size(); ++i) header.push_back("theta_" + std::to_string(i + 1));
  io::CsvWriter md(ctx.out_dir / "modes.csv", header);
  const bool real = max_imag(dec.modes()) == 0.0;
  for (int r = 0; r < ctx.grid.size(); ++r) {
    md.cell(ctx.grid.node(r));
    for (int i = 0; i < dec.size(); ++i) {
      if (real)
        md.cell(dec.modes()(r, i).real());
      else
        md.cell(dec.modes()(r, i));
    }
    md.end_row();
  }
  ctx.out << "spectrum: " << dec.size() << " modes, leading eigenvalue " << io::format_real(dec.eigenvalue(0))
          << "\n";
  return ExitCode::ok;
}

int cmd_filter(Context& ctx) {
  const GridKernel k = build_kernel(ctx, {"min", KernelRole::graphon, "induced"});
  Section s = ctx.root.child("filter");
  BoxPolynomial p;
  if (s.has("poly")) {
    if (s.has("random_degree")) s.fail("random_degree", "give either poly or random_degree, not both");
    p = BoxPolynomial(complex_list(s, "poly"));
  } else {
    const int degree = s.integer("random_degree", 3, 0, 32);
    std::vector<cplx> c(degree + 1);
    for (auto& x : c) x = ctx.rng.complex_uniform();
    p = BoxPolynomial(c);
    json& e = s.echo("poly") = json::array();
    for (const cplx& z : c) e.push_back(complex_json(z));
  }
  const Signal f = build_signal(ctx, s.child("signal"), k, "random_range");
  const double rank_tol = s.number("rank_tol", 1e-10);
  const bool check = s.flag("check_equivalence", false) || ctx.options.check_equivalence;
  const double tol = ctx.options.tol ? *ctx.options.tol : s.number("tol", 1e-6);
  if (ctx.options.tol) s.echo("tol") = tol;
  s.finish();

  const FilterSpec spec(p, k);
  const Signal op = filter_operator(spec, f);
  std::vector<std::string> header{"node", "operator_re", "operator_im"};
  if (!check) {
    io::CsvWriter w(ctx.out_dir / "filter.csv", header);
    for (int v = 0; v < ctx.grid.size(); ++v) w.cell(ctx.grid.node(v)).cell(op[v].real()).cell(op[v].imag()).end_row();
    ctx.out << "filter: degree " << p.degree() << " applied to " << ctx.grid.size() << " nodes\n";
    return ExitCode::ok;
  }

  const RkhsContext rk(decompose(k), rank_tol);
  const PointwiseFilter pf(spec, rk);
  const PointwiseFilter::Result pw = pf.apply(f);
  const double scale = std::max(norm_l2(op), std::numeric_limits<double>::min());
  for (const char* c : {"pointwise_re", "pointwise_im", "deviation"}) header.emplace_back(c);
  io::CsvWriter w(ctx.out_dir / "filter.csv", header);
  double worst = 0.0;
  for (int v = 0; v < ctx.grid.size(); ++v) {
    const double dev = std::abs(op[v] - pw.output[v]) / scale;
    worst = std::max(worst, dev);
    w.cell(ctx.grid.node(v)).cell(op[v].real()).cell(op[v].imag());
    w.cell(pw.output[v].real()).cell(pw.output[v].imag()).cell(dev).end_row();
  }
  const double rel = relative_l2(pw.output, op);
  ctx.out << "filter: degree " << p.degree() << ", relative L2 deviation " << io::format_real(rel)
          << ", max node deviation " << io::format_real(worst) << ", out-of-span ratio "
          << io::format_real(pw.out_of_span_ratio) << "\n";
  if (!(rel <= tol)) {
    std::ostringstream os;
    os << "operator and point-wise filters differ: relative deviation " << rel << " > " << tol;
    throw InvariantFailure(os.str());
  }
  return ExitCode::ok;
}

GridKernel require_graphon(const GridKernel& w, const char* what) {
  if (w.role() != KernelRole::graphon) throw ConfigError(std::string(what) + ": kernel.role must be graphon");
  return w;
}

int cmd_fourier(Context& ctx) {
  const GridKernel w = require_graphon(build_kernel(ctx, {"min", KernelRole::graphon, "none"}), "fourier");
  Section s = ctx.root.child("fourier");
  const int m = modes_option(s, "modes", 20, ctx.grid.size());
  const GridKernel k = induced_graphon_kernel(w);
  Section sig = s.child("signal");
  Signal f = Signal::zeros(ctx.grid);
  if (!sig.has("kind") && !sig.has("centers")) {
    // the four-center example signal
    json& e = s.echo("signal");
    e = {{"kind", "sections"},
         {"centers", {0.2, 0.45, 0.7, 0.86}},
         {"coeffs", {json::array({-2.0, 0.0}), json::array({1.0, 0.0}), json::array({-0.5, 0.0}), json::array({0.2, 0.0})}}};
    std::vector<int> centers;
    for (double x : {0.2, 0.45, 0.7, 0.86}) centers.push_back(ctx.grid.nearest_index(x));
    f = expand(centers, {-2.0, 1.0, -0.5, 0.2}, k);
    sig.finish();
  } else {
    f = build_signal(ctx, sig, k, "sections");
  }
  const double v_at = s.number("v", 0.5);
  if (v_at < ctx.grid.lo() || v_at > ctx.grid.hi()) s.fail("v", "must lie inside the grid interval");
  const int v = ctx.grid.nearest_index(v_at);
  const double tol = ctx.options.tol ? *ctx.options.tol : s.number("tol", 1e-6);
  if (ctx.options.tol) s.echo("tol") = tol;
  s.finish();

  const SpectralDecomposition dec = decompose(w, m);
  const FourierCoefficients fh = gft(f, dec);
  io::CsvWriter fw(ctx.out_dir / "fourier.csv", {"index", "re", "im"});
  for (int i = 0; i < fh.size(); ++i) fw.cell(i + 1).cell(fh[i].real()).cell(fh[i].imag()).end_row();

  const FourierCoefficients kv = kv_fourier(dec, v);
  const FourierCoefficients direct = gft(kernel_section(k, v), dec);
  io::CsvWriter kw(ctx.out_dir / "kv_fourier.csv", {"index", "lambda", "re", "im", "direct_re", "direct_im", "abs_error"});
  double worst = 0.0;
  for (int i = 0; i < kv.size(); ++i) {
    const double err = std::abs(kv[i] - direct[i]);
    worst = std::max(worst, err);
    kw.cell(i + 1).cell(dec.eigenvalue(i)).cell(kv[i].real()).cell(kv[i].imag());
    kw.cell(direct[i].real()).cell(direct[i].imag()).cell(err).end_row();
  }
  ctx.out << "fourier: " << m << " modes, first coefficient " << io::format_complex(fh[0])
          << ", kernel-section two-path error " << io::format_real(worst) << "\n";
  if (!(worst <= tol)) {
    std::ostringstream os;
    os << "kernel-section Fourier coefficients disagree with the direct transform: " << worst << " > " << tol;
    throw InvariantFailure(os.str());
  }
  return ExitCode::ok;
}

int cmd_graphon(Context& ctx) {
  const GridKernel w = require_graphon(build_kernel(ctx, {"min", KernelRole::graphon, "none"}), "graphon");
  Section s = ctx.root.child("graphon");
  const int power = s.integer("power", 1, 1, 8);
  const int m = modes_option(s, "modes", 10, ctx.grid.size());
  const int probes = s.integer("random_signals", 20, 1, 1000);
  const double spectrum_tol = s.number("spectrum_tol", 1e-5);
  const double operator_tol = s.number("operator_tol", 1e-10);
  s.finish();

  std::vector<PropertyResult> checks;
  const bool symmetric = w.is_hermitian(1e-12);
  if (symmetric) {
    const GridKernel k = induced_graphon_kernel(w, power);
    const SpectralDecomposition dw = decompose(w, m);
    const SpectralDecomposition dk = decompose(k, m);
    const auto clusters = eigenvalue_clusters(dw.eigenvalues().cwiseAbs(), 1e-8);
    std::vector<double> angle(m, 0.0);
    for (const auto& [b, e] : clusters) {
      // a cluster cut off by the truncation cannot be compared as a subspace
      const double a = subspace_angle(dw.modes().middleCols(b, e - b), dk.modes().middleCols(b, e - b), ctx.grid);
      for (int i = b; i < e; ++i) angle[i] = a;
    }
    io::CsvWriter r(ctx.out_dir / "graphon_report.csv",
                    {"index", "lambda", "sigma", "lambda_power", "abs_error", "subspace_angle"});
    double worst = 0.0;
    for (int i = 0; i < m; ++i) {
      const double lp = std::pow(dw.eigenvalue(i), 2 * power);
      const double err = std::abs(dk.eigenvalue(i) - lp);
      worst = std::max(worst, err);
      r.cell(i + 1).cell(dw.eigenvalue(i)).cell(dk.eigenvalue(i)).cell(lp).cell(err).cell(angle[i]).end_row();
    }
    checks.push_back(property("spectrum_power_error", worst, spectrum_tol));
    double op = 0.0;
    for (int t = 0; t < probes; ++t) {
      const Signal f = ctx.rng.complex_signal(ctx.grid);
      Signal iter = f;
      for (int j = 0; j < 2 * power; ++j) iter = apply_operator(w, iter);
      op = std::max(op, (apply_operator(k, f).values() - iter.values()).cwiseAbs().maxCoeff());
    }
    checks.push_back(property("operator_power_error", op, operator_tol));
  } else {
    log::info("graphon: asymmetric graphon, skipping the induced-kernel spectrum");
  }

  const DigraphonKernel d = digraphon_kernel(w, probes, ctx.seed, operator_tol);
  const CMatrix& km = d.kernel.matrix();
  checks.push_back(property("digraphon_hermitian_defect", (km - km.adjoint()).cwiseAbs().maxCoeff(), 1e-12));
  checks.push_back(property("digraphon_operator_identity", d.check.operator_identity_error, operator_tol));
  checks.push_back(property("digraphon_psd_violation", std::max(0.0, -d.check.psd_min_eigenvalue), 0.0));
  if (d.check.psd) checks.back().pass = true;

  io::CsvWriter c(ctx.out_dir / "graphon_checks.csv", {"property", "value", "tolerance", "pass"});
  write_property_rows(c, checks);
  ctx.out << "graphon: " << (symmetric ? "symmetric" : "asymmetric") << ", " << checks.size() << " checks, "
          << (all_pass(checks) ? "all pass" : "failures: " + failed_names(checks)) << "\n";
  if (!all_pass(checks)) throw InvariantFailure("graphon checks failed: " + failed_names(checks));
  return ExitCode::ok;
}

int cmd_localize(Context& ctx) {
  const GridKernel k = build_kernel(ctx, {"min", KernelRole::kernel, "none"});
  Section s = ctx.root.child("localize");
  std::vector<int> centers;
  std::vector<cplx> coeffs;
  if (s.has("random_centers")) {
    if (s.has("centers")) s.fail("random_centers", "give either centers or random_centers, not both");
    const int count = s.integer("random_centers", 4, 1, ctx.grid.size());
    centers = ctx.rng.distinct_indices(ctx.grid.size(), count);
    std::vector<double> at;
    for (int c : centers) at.push_back(ctx.grid.node(c));
    s.echo("centers") = at;
  } else if (s.has("centers")) {
    for (double x : real_list(s, "centers")) centers.push_back(ctx.grid.nearest_index(x));
  } else {
    for (double x : {0.2, 0.45, 0.7, 0.86}) centers.push_back(ctx.grid.nearest_index(x));
    s.echo("centers") = std::vector<double>{0.2, 0.45, 0.7, 0.86};
    if (!s.has("coeffs")) {
      coeffs = {-2.0, 1.0, -0.5, 0.2};
      json& e = s.echo("coeffs") = json::array();
      for (const cplx& z : coeffs) e.push_back(complex_json(z));
    }
  }
  if (s.has("coeffs")) {
    coeffs = complex_list(s, "coeffs");
  } else if (coeffs.empty()) {
    for (std::size_t i = 0; i < centers.size(); ++i) coeffs.push_back(ctx.rng.complex_uniform());
    json& e = s.echo("coeffs") = json::array();
    for (const cplx& z : coeffs) e.push_back(complex_json(z));
  }
  const int B = s.integer("B", 2, 0, ctx.grid.size());
  const double tol = ctx.options.tol ? *ctx.options.tol : s.number("tol", 1e-3);
  if (ctx.options.tol) s.echo("tol") = tol;
  std::optional<std::vector<cplx>> targets;
  if (s.has("design")) {
    Section d = s.child("design");
    targets = complex_list(d, "targets");
    d.finish();
  }
  s.finish();

  const RkhsFiniteSignal fs(centers, coeffs, k);
  const SpectralDecomposition dec = decompose(k);
  const BandReport rep = uncertainty_residuals(fs, dec, B);
  io::CsvWriter br(ctx.out_dir / "band_report.csv", {"mode", "sigma", "abs_fhat", "band"});
  for (int i = 0; i < dec.size(); ++i)
    br.cell(i + 1).cell(dec.eigenvalue(i)).cell(rep.magnitudes[i]).cell(std::string(to_string(rep.band_of(i)))).end_row();

  const BandlimitResult bl = bandlimit_check(fs.expand(), dec, B, tol);
  io::CsvWriter sm(ctx.out_dir / "localize_summary.csv", {"property", "value"});
  sm.cell(std::string("support")).cell(rep.support).end_row();
  sm.cell(std::string("B")).cell(B).end_row();
  sm.cell(std::string("low_energy")).cell(rep.low_energy).end_row();
  sm.cell(std::string("mid_energy")).cell(rep.mid_energy).end_row();
  sm.cell(std::string("tail_energy")).cell(rep.tail_energy).end_row();
  sm.cell(std::string("bandlimited")).cell(bl.pass ? 1 : 0).end_row();
  sm.cell(std::string("max_out_of_band")).cell(bl.max_out_of_band).end_row();
  if (targets) {
    const CoefficientDesign d = design_coeffs(centers, dec, B, *targets);
    io::CsvWriter dw(ctx.out_dir / "design.csv", {"center_index", "node", "re", "im"});
    for (std::size_t t = 0; t < centers.size(); ++t)
      dw.cell(centers[t]).cell(ctx.grid.node(centers[t])).cell(d.coeffs[t].real()).cell(d.coeffs[t].imag()).end_row();
    sm.cell(std::string("design_mid_energy")).cell(d.mid_energy).end_row();
    sm.cell(std::string("design_tail_energy")).cell(d.tail_energy).end_row();
    sm.cell(std::string("design_constraint_residual")).cell(d.constraint_residual).end_row();
  }
  ctx.out << "localize: |T| = " << rep.support << ", B = " << B << ", "
          << (bl.pass ? "bandlimited" : "not bandlimited") << " at tol " << io::format_real(tol) << "\n";
  return ExitCode::ok;
}

int cmd_fit(Context& ctx) {
  const GridKernel w = build_kernel(ctx, {"min", KernelRole::graphon, "none"});
  Section s = ctx.root.child("fit");
  const int n = ctx.grid.size();
  const int q = s.integer("q", std::min(35, n), 1, n);
  const int eval_count = s.integer("eval_count", std::max(q, std::min(35, n)), q, n);
  const double center = s.number("sigma_c", 0.05);
  const double gamma = s.number("gamma", 0.001);
  if (!(gamma > 0.0)) s.fail("gamma", "must be positive");
  const double reg = s.number("reg", 0.0);
  if (reg < 0.0) s.fail("reg", "must be nonnegative");
  Section ds = s.child("design_kernel");
  const KernelCatalogEntry design = read_catalog(ds, "min");
  ds.finish();
  const int curve_points = s.integer("curve_points", 201, 2, 100000);
  s.finish();

  const SpectralDecomposition dec = decompose(w, eval_count);
  const Vector& ev = dec.eigenvalues();
  const std::vector<double> sig(ev.data(), ev.data() + q);
  std::vector<double> y(q);
  for (int i = 0; i < q; ++i) y[i] = gaussian_bump(sig[i], center, gamma);
  const FilterModel model = fit_filter(sig, y, design, reg);

  io::CsvWriter rep(ctx.out_dir / "fit_report.csv", {"sigma", "target", "fitted", "residual"});
  double worst = 0.0;
  for (int i = 0; i < eval_count; ++i) {
    const double target = gaussian_bump(ev[i], center, gamma);
    const double fitted = eval_filter(model, ev[i]);
    worst = std::max(worst, std::abs(fitted - target));
    rep.cell(ev[i]).cell(target).cell(fitted).cell(fitted - target).end_row();
  }
  double lo = std::min(0.0, ev.minCoeff()), hi = 1.1 * ev.cwiseAbs().maxCoeff();
  lo = std::max(lo, design.domain_lo);
  hi = std::min(hi, design.domain_hi);
  io::CsvWriter curve(ctx.out_dir / "filter_curve.csv", {"u", "p"});
  for (int j = 0; j < curve_points; ++j) {
    const double u = lo + (hi - lo) * j / (curve_points - 1);
    curve.cell(u).cell(eval_filter(model, u)).end_row();
  }
  ctx.out << "fit: q = " << q << ", max residual over " << eval_count << " eigenvalues "
          << io::format_real(worst) << "\n";
  return ExitCode::ok;
}

int cmd_verify(Context& ctx) {
  Section s = ctx.root.child("verify");
  s.finish();
  const std::vector<PropertyResult> rows = verify_properties(ctx.seed);
  io::CsvWriter w(ctx.out_dir / "verify.csv", {"property", "value", "tolerance", "pass"});
  write_property_rows(w, rows);
  for (const auto& r : rows)
    ctx.out << (r.pass ? "PASS " : "FAIL ") << r.name << " value=" << io::format_real(r.value)
            << " tol=" << io::format_real(r.tolerance) << "\n";
  if (!all_pass(rows)) throw InvariantFailure("verify: failing properties: " + failed_names(rows));
  return ExitCode::ok;
}

const std::map<std::string, std::function<int(Context&)>>& table() {
  static const std::map<std::string, std::function<int(Context&)>> t{
      {"spectrum", cmd_spectrum}, {"filter", cmd_filter}, {"fourier", cmd_fourier}, {"graphon", cmd_graphon},
      {"localize", cmd_localize}, {"fit", cmd_fit},       {"verify", cmd_verify}};
  return t;
}

json read_config(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config '" + path.string() + "'");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError("config '" + path.string() + "' is not valid JSON: " + e.what());
  }
}

void error_line(std::ostream& err, int code, const char* kind, const std::string& message) {
  err << json{{"error", {{"code", code}, {"kind", kind}, {"message", message}}}}.dump() << "\n";
}

int dispatch(const Options& options, std::ostream& out) {
  const auto it = table().find(options.subcommand);
  if (it == table().end()) throw ConfigError("unknown subcommand '" + options.subcommand + "'");
  Context ctx(options, out, read_config(options.config));
  Section& root = ctx.root;
  const json* version = root.raw("version");
  if (!version) root.fail("version", "is required");
  if (!version->is_number_integer() || version->get<int>() != kConfigVersion)
    root.fail("version", "unsupported config version (expected " + std::to_string(kConfigVersion) + ")");
  root.echo("version") = kConfigVersion;
  {
    const json* seed = root.raw("seed");
    if (seed && !seed->is_number_unsigned()) root.fail("seed", "must be a nonnegative integer");
    ctx.seed = seed ? seed->get<std::uint64_t>() : 1;
    root.echo("seed") = ctx.seed;
    ctx.rng = Random(ctx.seed);
  }
  {
    Section g = root.child("grid");
    const double lo = g.number("lo", 0.0), hi = g.number("hi", 1.0);
    const int n = g.integer("n", 256, 2, 8192);
    g.finish();
    ctx.grid = Grid(lo, hi, n);
  }
  ctx.out_dir = options.out ? *options.out : fs::path(root.text("output_dir", "out"));
  if (options.out) root.raw("output_dir");  // the override is a run location, not part of the experiment
  // a config may carry blocks for several subcommands; each is validated when read
  for (const auto& [name, fn] : table()) root.raw(name);
  root.raw("kernel");
  root.finish();
  fs::create_directories(ctx.out_dir);

  const int code = it->second(ctx);
  // blocks the subcommand did not read carry no resolved values
  for (const auto& [name, fn] : table())
    if (name != options.subcommand) ctx.echo.erase(name);
  std::ofstream(ctx.out_dir / "run.json") << ctx.echo.dump(2) << "\n";
  return code;
}

}  // namespace

const std::vector<std::string>& subcommands() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> v;
    for (const auto& [name, fn] : table()) v.push_back(name);
    return v;
  }();
  return names;
}

int run(const Options& options, std::ostream& out, std::ostream& err) {
  try {
    return dispatch(options, out);
  } catch (const ConfigError& e) {
    error_line(err, ExitCode::config_error, "config", e.what());
    return ExitCode::config_error;
  } catch (const InvalidArgument& e) {
    error_line(err, ExitCode::config_error, "invalid_argument", e.what());
    return ExitCode::config_error;
  } catch (const json::exception& e) {
    error_line(err, ExitCode::config_error, "config", e.what());
    return ExitCode::config_error;
  } catch (const NumericalError& e) {
    error_line(err, ExitCode::numerical_failure, "numerical", e.what());
    return ExitCode::numerical_failure;
  } catch (const InvariantFailure& e) {
    error_line(err, ExitCode::numerical_failure, "invariant", e.what());
    return ExitCode::numerical_failure;
  } catch (const std::exception& e) {
    error_line(err, ExitCode::internal, "internal", e.what());
    return ExitCode::internal;
  }
}

}  // namespace boxkernel::cli
