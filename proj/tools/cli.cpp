#include "cli.hpp"

#include "planks/ballfinder.hpp"
#include "planks/chebmult.hpp"
#include "planks/complexproj.hpp"
#include "planks/covering.hpp"
#include "planks/error.hpp"
#include "planks/optim.hpp"
#include "planks/sphereopt.hpp"
#include "planks/trigcircle.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <iterator>
#include <numbers>
#include <sstream>

namespace planks::cli {

using nlohmann::json;

namespace {

constexpr double kPi = std::numbers::pi;

const std::vector<std::pair<std::string, Command>> kCommands = {
    {"trig-verify", Command::kTrigVerify},       {"sphere-max", Command::kSphereMax},
    {"sphere-verify", Command::kSphereVerify},   {"complex-verify", Command::kComplexVerify},
    {"weighted-verify", Command::kWeightedVerify}, {"ball-pair", Command::kBallPair},
    {"ball-multiplier", Command::kBallMultiplier}, {"refute-sphere", Command::kRefuteSphere},
    {"refute-ball", Command::kRefuteBall},       {"cheb-table", Command::kChebTable},
    {"lifted-diag", Command::kLiftedDiag},       {"convergence", Command::kConvergence},
};

// ---- reading ---------------------------------------------------------------

std::string at(const std::string& path, const std::string& key) { return path.empty() ? key : path + "." + key; }
std::string at(const std::string& path, std::size_t i) { return path + "[" + std::to_string(i) + "]"; }

[[noreturn]] void bad(const std::string& path, const std::string& what) {
  throw InputError("field '" + path + "': " + what);
}

const json& need(const json& j, const std::string& key, const std::string& path) {
  if (!j.is_object()) bad(path.empty() ? "<root>" : path, "expected an object");
  const auto it = j.find(key);
  if (it == j.end()) bad(at(path, key), "missing");
  return *it;
}

double as_number(const json& j, const std::string& path) {
  if (!j.is_number()) bad(path, "expected a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) bad(path, "expected a finite number");
  return v;
}

int as_int(const json& j, const std::string& path) {
  if (!j.is_number_integer()) bad(path, "expected an integer");
  return j.get<int>();
}

const json& as_array(const json& j, const std::string& path) {
  if (!j.is_array()) bad(path, "expected an array");
  return j;
}

double num(const json& j, const std::string& key, const std::string& path) {
  return as_number(need(j, key, path), at(path, key));
}

int integer(const json& j, const std::string& key, const std::string& path) {
  return as_int(need(j, key, path), at(path, key));
}

Vec vec(const json& j, const std::string& key, const std::string& path) {
  const std::string p = at(path, key);
  const json& a = as_array(need(j, key, path), p);
  Vec v(static_cast<Eigen::Index>(a.size()));
  for (std::size_t i = 0; i < a.size(); ++i) v[static_cast<Eigen::Index>(i)] = as_number(a[i], at(p, i));
  return v;
}

void check_dim(const Vec& v, int dim, const std::string& path) {
  if (v.size() != dim) bad(path, "expected " + std::to_string(dim) + " entries");
}

int positive_dim(const json& j, const std::string& path) {
  const int d = integer(j, "dim", path);
  if (d < 1) bad(at(path, "dim"), "must be positive");
  return d;
}

std::vector<int> exponents(const json& t, int dim, const std::string& path) {
  const std::string p = at(path, "e");
  const json& a = as_array(need(t, "e", path), p);
  if (static_cast<int>(a.size()) != dim) bad(p, "expected " + std::to_string(dim) + " exponents");
  std::vector<int> e;
  for (std::size_t i = 0; i < a.size(); ++i) {
    e.push_back(as_int(a[i], at(p, i)));
    if (e.back() < 0) bad(at(p, i), "exponent must be nonnegative");
  }
  return e;
}

// {"dim", "terms": [{"e", "c"}]} or {"dim", "factors": [{"a", "b"}]}.
MultiPoly read_poly(const json& j, const std::string& path = "") {
  const int dim = positive_dim(j, path);
  if (j.contains("factors")) {
    const std::string p = at(path, "factors");
    const json& fs = as_array(j["factors"], p);
    if (fs.empty()) bad(p, "must not be empty");
    std::vector<AffineForm> forms;
    for (std::size_t i = 0; i < fs.size(); ++i) {
      Vec a = vec(fs[i], "a", at(p, i));
      check_dim(a, dim, at(at(p, i), "a"));
      if (!(a.norm() > 0.0)) bad(at(at(p, i), "a"), "normal must be nonzero");
      forms.emplace_back(std::move(a), num(fs[i], "b", at(p, i)));
    }
    return MultiPoly::product_of(forms);
  }
  const std::string p = at(path, "terms");
  const json& ts = as_array(need(j, "terms", path), p);
  std::vector<Term> terms;
  for (std::size_t i = 0; i < ts.size(); ++i) {
    terms.push_back({exponents(ts[i], dim, at(p, i)), num(ts[i], "c", at(p, i))});
  }
  return MultiPoly(dim, std::move(terms));
}

// {"dim", "deg", "terms": [{"e", "re", "im"}]} or {"dim", "linear_forms": [[[re, im], ...], ...]}.
ComplexHomogPoly read_complex_poly(const json& j, const std::string& path = "") {
  const int dim = positive_dim(j, path);
  std::optional<ComplexHomogPoly> poly;
  if (j.contains("linear_forms")) {
    const std::string p = at(path, "linear_forms");
    const json& fs = as_array(j["linear_forms"], p);
    if (fs.empty()) bad(p, "must not be empty");
    std::vector<CVec> forms;
    for (std::size_t i = 0; i < fs.size(); ++i) {
      const json& f = as_array(fs[i], at(p, i));
      if (static_cast<int>(f.size()) != dim) bad(at(p, i), "expected " + std::to_string(dim) + " coefficients");
      CVec c(dim);
      for (std::size_t k = 0; k < f.size(); ++k) {
        const json& z = as_array(f[k], at(at(p, i), k));
        if (z.size() != 2) bad(at(at(p, i), k), "expected [re, im]");
        c[static_cast<Eigen::Index>(k)] = Complex(as_number(z[0], at(at(p, i), k)), as_number(z[1], at(at(p, i), k)));
      }
      if (!(c.norm() > 0.0)) bad(at(p, i), "linear form must be nonzero");
      forms.push_back(c);
    }
    poly = ComplexHomogPoly::product_of_linear(forms);
  } else {
    const std::string p = at(path, "terms");
    const json& ts = as_array(need(j, "terms", path), p);
    std::vector<ComplexTerm> terms;
    for (std::size_t i = 0; i < ts.size(); ++i) {
      const double im = ts[i].contains("im") ? num(ts[i], "im", at(p, i)) : 0.0;
      terms.push_back({exponents(ts[i], dim, at(p, i)), Complex(num(ts[i], "re", at(p, i)), im)});
    }
    poly = ComplexHomogPoly(dim, std::move(terms));
  }
  if (j.contains("deg") && integer(j, "deg", path) != poly->degree()) {
    bad(at(path, "deg"), "does not match the degree of the terms (" + std::to_string(poly->degree()) + ")");
  }
  return *poly;
}

// {"n"?, "a0", "c": [[a_k, b_k], ...]}.
TrigPoly read_trig(const json& j) {
  const double a0 = j.contains("a0") ? num(j, "a0", "") : 0.0;
  const json& cs = as_array(need(j, "c", ""), "c");
  std::vector<std::pair<double, double>> c;
  for (std::size_t i = 0; i < cs.size(); ++i) {
    const json& pair = as_array(cs[i], at("c", i));
    if (pair.size() != 2) bad(at("c", i), "expected [a_k, b_k]");
    c.emplace_back(as_number(pair[0], at("c", i)), as_number(pair[1], at("c", i)));
  }
  if (j.contains("n") && integer(j, "n", "") != static_cast<int>(c.size())) {
    bad("n", "does not match the number of coefficient pairs");
  }
  TrigPoly t(a0, c);
  if (t.is_zero()) bad("c", "trigonometric polynomial is identically zero");
  return t;
}

// ---- writing ---------------------------------------------------------------

json number(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

json to_json(const Vec& v) {
  json a = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(number(v[i]));
  return a;
}

json to_json(const CVec& v) {
  json a = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back({number(v[i].real()), number(v[i].imag())});
  return a;
}

json to_json(const std::vector<double>& v) {
  json a = json::array();
  for (double x : v) a.push_back(number(x));
  return a;
}

template <class T>
json optional_json(const std::optional<T>& v) {
  return v ? to_json(*v) : json(nullptr);
}

json to_json(const InterlacingResult& r) { return {{"interlaces", r.interlaces}, {"arcs", to_json(r.arcs)}}; }

json trig_input(const TrigPoly& t) {
  json c = json::array();
  for (const auto& [a, b] : t.coeffs()) c.push_back({a, b});
  return {{"n", t.degree()}, {"a0", t.a0()}, {"c", c}};
}

// ---- commands --------------------------------------------------------------

Outcome trig_verify(const RunConfig& cfg, const json& in) {
  const TrigPoly t = read_trig(in);
  const auto zs = trig_zeros(t);
  const auto mx = trig_max_points(t);
  const auto cert = max_zero_certificate(t, cfg.tol);
  json zeros = json::array();
  for (const auto& z : zs.zeros) zeros.push_back({{"theta", z.theta}, {"multiplicity", z.multiplicity}});
  json r = {{"input", trig_input(t)},
            {"degree", t.degree()},
            {"zeros", zeros},
            {"max_value", mx.value},
            {"max_points", to_json(mx.points)},
            {"min_distance", number(cert.min_distance)},
            {"bound", number(cert.bound)},
            {"certificate",
             {{"signed_max", cert.signed_max},
              {"q_identically_zero", cert.q_identically_zero},
              {"q_zero_count", cert.q_zero_count},
              {"q_clear_near_max", cert.q_clear_near_max}}},
            {"passed", cert.passed}};
  if (t.degree() >= 1) r["interlacing"] = to_json(interlacing_check(t));
  return {r, cert.passed};
}

Outcome sphere_max(const RunConfig& cfg, const json& in) {
  const MultiPoly p = read_poly(in);
  const auto m = maximize_abs_on_sphere(p, cfg.starts, cfg.seed);
  json near = json::array();
  for (const auto& q : m.all_near_max) near.push_back(to_json(q.coords()));
  return {{{"degree", p.degree()},
           {"point", to_json(m.point.coords())},
           {"value", m.value},
           {"log_value", m.log_value},
           {"certified", m.certified},
           {"near_maximizers", near}},
          true};
}

Outcome sphere_verify(const RunConfig& cfg, const json& in) {
  const MultiPoly p = read_poly(in);
  const auto rep = verify_sphere_distance(p, cfg.seed, cfg.starts, cfg.tol);
  json equality = json::object();
  if (rep.equality_circle) {
    equality["circle"] = {{"u", to_json(rep.equality_circle->u())}, {"v", to_json(rep.equality_circle->v())}};
  }
  if (rep.interlacing) equality["interlacing"] = to_json(*rep.interlacing);
  json cands = json::array();
  for (const auto& c : rep.candidates) cands.push_back({{"point", to_json(c.point.coords())}, {"distance", number(c.distance)}});
  return {{{"degree", rep.degree},
           {"maximizer", to_json(rep.maximizer.coords())},
           {"value", rep.value},
           {"distance", number(rep.distance)},
           {"bound", rep.bound},
           {"passed", rep.passed},
           {"nearest_zero", optional_json(rep.nearest_zero)},
           {"equality", equality},
           {"candidates", cands}},
          rep.passed};
}

json to_json(const ComplexReport& r) {
  json items = json::array();
  for (const auto& it : r.items) {
    items.push_back({{"degree", it.degree},
                     {"distance", number(it.distance)},
                     {"bound", it.bound},
                     {"euclidean_distance", number(it.euclidean_distance)},
                     {"passed", it.passed},
                     {"nearest_zero", optional_json(it.nearest_zero)}});
  }
  json out = {{"maximizer", to_json(r.maximizer)}, {"log_value", r.log_value}, {"items", items}, {"passed", r.passed}};
  out["cp1_radius"] = r.cp1_radius ? number(*r.cp1_radius) : json(nullptr);
  return out;
}

Outcome complex_verify(const RunConfig& cfg, const json& in) {
  const ComplexHomogPoly p = read_complex_poly(in);
  const auto rep = verify_complex_distance(p, cfg.seed, cfg.starts, cfg.tol);
  json r = to_json(rep);
  bool passed = rep.passed;
  const auto& zero = rep.items.front().nearest_zero;
  if (p.dim() == 2 && p.degree() >= 2 && zero) {
    const auto c = cp1_radius_check(p, *zero, cfg.seed, cfg.starts);
    r["chart_check"] = {{"a", number(c.a)},
                        {"a_squared", number(c.a * c.a)},
                        {"bound", c.bound},
                        {"passed", c.passed},
                        {"maximizer", to_json(c.maximizer)}};
    passed = passed && c.passed;
  }
  r["passed"] = passed;
  return {r, passed};
}

Outcome weighted_verify(const RunConfig& cfg, const json& in) {
  const json& items = as_array(need(in, "items", ""), "items");
  std::vector<WeightedItem> list;
  for (std::size_t i = 0; i < items.size(); ++i) {
    list.push_back({read_complex_poly(items[i], at("items", i)), num(items[i], "delta", at("items", i))});
  }
  const WeightedSystem sys(std::move(list));
  const auto rep = verify_weighted_distances(sys, cfg.seed, cfg.starts, cfg.tol);
  json r = to_json(rep);
  r["budget"] = sys.budget();
  return {r, rep.passed};
}

Outcome ball_pair(const RunConfig& cfg, const json& in) {
  const MultiPoly p = read_poly(in);
  const auto c = pair_point(p, cfg.seed, cfg.starts, cfg.tol);
  return {{{"degree", p.degree()},
           {"p", to_json(c.p)},
           {"q", to_json(c.q)},
           {"swapped", c.swapped},
           {"chosen", to_json(c.chosen)},
           {"sphere_distance", number(c.sphere_distance)},
           {"sphere_bound", c.sphere_bound},
           {"chord_bound", c.chord_bound},
           {"ball_distance", number(c.ball_distance)},
           {"bound", c.bound},
           {"passed", c.passed},
           {"lift",
            {{"nearest_zero", optional_json(c.nearest_zero)},
             {"t", c.lift_t ? number(*c.lift_t) : json(nullptr)},
             {"gap", c.lift_t ? number(std::abs(1.0 - *c.lift_t)) : json(nullptr)},
             {"gap_bound", c.lift_gap_bound},
             {"bound_applies", c.lift_bound_applies}}}},
          c.passed};
}

Outcome ball_multiplier(const RunConfig& cfg, const json& in) {
  const MultiPoly p = read_poly(in);
  const auto m = multiplier_point(p, cfg.seed, cfg.starts, cfg.tol);
  const auto naive = naive_ball_maximizer(p, cfg.seed, cfg.starts);
  json cands = json::array();
  for (const auto& c : m.candidates) cands.push_back({{"point", to_json(c.point)}, {"distance", number(c.distance)}});
  return {{{"n", p.degree()},
           {"point", to_json(m.point.coords())},
           {"log_value", m.log_value},
           {"distance", number(m.distance)},
           {"bound", m.bound},
           {"passed", m.passed},
           {"nearest_zero", optional_json(m.nearest_zero)},
           {"candidates", cands},
           {"naive", {{"point", to_json(naive.point.coords())}, {"distance", number(naive.distance)}}}},
          m.passed};
}

json to_json(const RefutationResult& r) {
  return {{"point", to_json(r.point)},
          {"clearances", to_json(r.clearances)},
          {"total_width", r.total_width},
          {"budget", r.budget},
          {"split_N", r.split_N},
          {"factors", r.factors},
          {"verified", r.verified},
          {"offending", r.offending ? json(*r.offending) : json(nullptr)},
          {"local_max_rank", r.local_max_rank}};
}

Outcome refute_sphere(const RunConfig& cfg, const json& in) {
  const int dim = positive_dim(in, "");
  const json& ss = as_array(need(in, "segments", ""), "segments");
  std::vector<SphericalSegment> segs;
  for (std::size_t i = 0; i < ss.size(); ++i) {
    const std::string p = at("segments", i);
    Vec a = vec(ss[i], "a", p);
    check_dim(a, dim, at(p, "a"));
    segs.emplace_back(std::move(a), num(ss[i], "b", p), num(ss[i], "delta", p));
  }
  const auto r = refute_cover_sphere(segs, cfg.seed, cfg.starts);
  return {to_json(r), r.verified};
}

Outcome refute_ball(const RunConfig& cfg, const json& in) {
  const int dim = positive_dim(in, "");
  const json& ps = as_array(need(in, "planks", ""), "planks");
  std::vector<Plank> planks;
  for (std::size_t i = 0; i < ps.size(); ++i) {
    const std::string p = at("planks", i);
    Vec a = vec(ps[i], "a", p);
    check_dim(a, dim, at(p, "a"));
    planks.emplace_back(std::move(a), num(ps[i], "c", p), 0.5 * num(ps[i], "w", p));
  }
  const auto r = refute_cover_ball(planks, cfg.seed, cfg.starts);
  return {to_json(r), r.verified};
}

double scaled_cheb(int k, double x) { return ((k / 2) % 2 == 0 ? 1.0 : -1.0) * cheb_eval(k, x / k); }

Outcome cheb_table(const RunConfig&, const json& in) {
  const int n = integer(in, "n", ""), k = integer(in, "k", "");
  if (n < 1 || k <= n || (k - n) % 2 != 0) bad("k", "need 1 <= n < k with k = n (mod 2)");
  const double X = in.contains("half_width") ? num(in, "half_width", "") : 5.0;
  const int points = in.contains("points") ? integer(in, "points", "") : 201;
  if (!(X >= 0.0)) bad("half_width", "must be nonnegative");
  if (points < 2) bad("points", "must be at least 2");
  json rows = json::array();
  for (int i = 0; i < points; ++i) {
    const double x = -X + 2.0 * X * i / (points - 1);
    rows.push_back({{"x", x},
                    {"scaled_T_k", scaled_cheb(k, x)},
                    {"target", k % 2 == 0 ? std::cos(x) : std::sin(x)},
                    {"g_nk", g_nk_eval(n, k, x)},
                    {"g_n", g_n_eval(n, x)},
                    {"G_n", G_n_eval(n, x)}});
  }
  return {{{"n", n}, {"k", k}, {"half_width", X}, {"rows", rows}}, true};
}

Outcome lifted_diag(const RunConfig&, const json& in) {
  const auto r = lifted_diagnostics(integer(in, "n", ""), integer(in, "k", ""));
  const bool ok = r.count_ok && r.spacing_ok && r.cap_ok;
  return {{{"n", r.n},
           {"k", r.k},
           {"r_k", r.r_k},
           {"latitudes", to_json(r.latitudes)},
           {"spherical_heights", to_json(r.spherical_heights)},
           {"count", r.count},
           {"spacing", r.spacing},
           {"spacing_error", r.spacing_error},
           {"cap_radius", r.cap_radius},
           {"count_ok", r.count_ok},
           {"spacing_ok", r.spacing_ok},
           {"cap_ok", r.cap_ok},
           {"passed", ok}},
          ok};
}

Outcome convergence(const RunConfig&, const json& in) {
  const int n = integer(in, "n", "");
  const json& ks = as_array(need(in, "ks", ""), "ks");
  std::vector<int> list;
  for (std::size_t i = 0; i < ks.size(); ++i) list.push_back(as_int(ks[i], at("ks", i)));
  const double X = in.contains("half_width") ? num(in, "half_width", "") : 5.0;
  const auto rep = convergence_report(n, list, X);
  json rows = json::array();
  for (const auto& row : rep.rows) {
    rows.push_back({{"k", row.k}, {"cheb_error", row.cheb_error}, {"product_error", row.product_error}});
  }
  return {{{"n", rep.n}, {"half_width", rep.half_width}, {"rows", rows}}, true};
}

// ---- CSV -------------------------------------------------------------------

std::string fmt(const json& v) {
  if (v.is_null()) return "";
  if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
  if (v.is_number_integer()) return std::to_string(v.get<long long>());
  if (v.is_number()) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v.get<double>());
    return buf;
  }
  if (v.is_string()) return v.get<std::string>();
  return v.dump();
}

std::string fmt(double v) { return fmt(json(v)); }

void flatten(const json& j, const std::string& path, std::ostringstream& out) {
  if (j.is_object()) {
    for (const auto& [k, v] : j.items()) flatten(v, path.empty() ? k : path + "." + k, out);
  } else if (j.is_array()) {
    for (std::size_t i = 0; i < j.size(); ++i) flatten(j[i], path + "[" + std::to_string(i) + "]", out);
  } else {
    out << path << ',' << fmt(j) << '\n';
  }
}

std::string trig_csv(const json& r) {
  std::vector<std::pair<double, double>> c;
  for (const auto& p : r["input"]["c"]) c.emplace_back(p[0].get<double>(), p[1].get<double>());
  const TrigPoly t(r["input"]["a0"].get<double>(), c);
  std::ostringstream out;
  out << "kind,theta,value,arc\n";
  for (int i = 0; i < 720; ++i) {
    const double th = 2.0 * kPi * i / 720;
    out << "sample," << fmt(th) << ',' << fmt(t(th)) << ",\n";
  }
  // Arcs run from each marked point to the next one around the circle.
  std::vector<std::pair<double, std::string>> marks;
  for (const auto& z : r["zeros"]) marks.emplace_back(z["theta"].get<double>(), "zero");
  for (const auto& m : r["max_points"]) marks.emplace_back(m.get<double>(), "max");
  std::sort(marks.begin(), marks.end());
  for (std::size_t i = 0; i < marks.size(); ++i) {
    const double next = i + 1 < marks.size() ? marks[i + 1].first : marks.front().first + 2.0 * kPi;
    out << marks[i].second << ',' << fmt(marks[i].first) << ',' << fmt(t(marks[i].first)) << ','
        << fmt(next - marks[i].first) << '\n';
  }
  return out.str();
}

std::string multiplier_csv(const json& r) {
  const int n = r["n"].get<int>();
  const double lim = 1.0 + 1.0 / n;
  std::ostringstream out;
  out << "x,G_n\n";
  for (int i = 0; i <= 400; ++i) {
    const double x = -lim + 2.0 * lim * i / 400;
    out << fmt(x) << ',' << fmt(G_n_eval(n, x)) << '\n';
  }
  return out.str();
}

}  // namespace

std::optional<Command> parse_command(const std::string& name) {
  if (name == "theorem1") return Command::kSphereVerify;  // alias
  for (const auto& [n, c] : kCommands) {
    if (n == name) return c;
  }
  return std::nullopt;
}

std::string command_name(Command c) {
  for (const auto& [n, cc] : kCommands) {
    if (cc == c) return n;
  }
  return "unknown";
}

Outcome execute(const RunConfig& cfg, const json& in) {
  if (!(cfg.tol > 0.0)) throw InputError("--tol must be positive");
  if (cfg.starts < 1) throw InputError("--starts must be at least 1");
  Outcome o;
  switch (cfg.command) {
    case Command::kTrigVerify: o = trig_verify(cfg, in); break;
    case Command::kSphereMax: o = sphere_max(cfg, in); break;
    case Command::kSphereVerify: o = sphere_verify(cfg, in); break;
    case Command::kComplexVerify: o = complex_verify(cfg, in); break;
    case Command::kWeightedVerify: o = weighted_verify(cfg, in); break;
    case Command::kBallPair: o = ball_pair(cfg, in); break;
    case Command::kBallMultiplier: o = ball_multiplier(cfg, in); break;
    case Command::kRefuteSphere: o = refute_sphere(cfg, in); break;
    case Command::kRefuteBall: o = refute_ball(cfg, in); break;
    case Command::kChebTable: o = cheb_table(cfg, in); break;
    case Command::kLiftedDiag: o = lifted_diag(cfg, in); break;
    case Command::kConvergence: o = convergence(cfg, in); break;
  }
  o.report["command"] = command_name(cfg.command);
  o.report["config"] = {{"seed", cfg.seed},
                        {"tol", cfg.tol},
                        {"starts", cfg.starts},
                        {"generator", std::string(kGeneratorName)}};
  return o;
}

std::string emit_plot_data(const json& report) {
  const std::string cmd = report.value("command", "");
  if (cmd == "trig-verify") return trig_csv(report);
  if (cmd == "ball-multiplier") return multiplier_csv(report);
  std::ostringstream out;
  if (cmd == "lifted-diag") {
    out << "index,latitude,spherical_height,spacing,cap_radius\n";
    for (std::size_t i = 0; i < report["latitudes"].size(); ++i) {
      out << i << ',' << fmt(report["latitudes"][i]) << ',' << fmt(report["spherical_heights"][i]) << ','
          << fmt(report["spacing"]) << ',' << fmt(report["cap_radius"]) << '\n';
    }
  } else if (cmd == "cheb-table") {
    out << "x,scaled_T_k,target,g_nk,g_n,G_n\n";
    for (const auto& row : report["rows"]) {
      out << fmt(row["x"]) << ',' << fmt(row["scaled_T_k"]) << ',' << fmt(row["target"]) << ',' << fmt(row["g_nk"])
          << ',' << fmt(row["g_n"]) << ',' << fmt(row["G_n"]) << '\n';
    }
  } else if (cmd == "convergence") {
    out << "k,cheb_error,product_error\n";
    for (const auto& row : report["rows"]) {
      out << fmt(row["k"]) << ',' << fmt(row["cheb_error"]) << ',' << fmt(row["product_error"]) << '\n';
    }
  } else {
    out << "field,value\n";
    flatten(report, "", out);
  }
  return out.str();
}

int run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  std::string text;
  if (cfg.input == "-") {
    text.assign(std::istreambuf_iterator<char>(std::cin), {});
  } else {
    std::ifstream f(cfg.input);
    if (!f) {
      err << "error: cannot read input '" << cfg.input << "'\n";
      return kExitUsage;
    }
    text.assign(std::istreambuf_iterator<char>(f), {});
  }

  json in;
  try {
    in = json::parse(text);
  } catch (const json::parse_error& e) {
    // Convert the byte offset into line:column.
    const std::size_t pos = std::min<std::size_t>(e.byte == 0 ? 0 : e.byte - 1, text.size());
    const auto line = 1 + std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(pos), '\n');
    const auto nl = text.rfind('\n', pos == 0 ? 0 : pos - 1);
    const auto col = nl == std::string::npos || pos == 0 ? pos + 1 : pos - nl;
    err << cfg.input << ':' << line << ':' << col << ": malformed JSON: " << e.what() << '\n';
    return kExitUsage;
  }

  Outcome o;
  int code = kExitOk;
  try {
    o = execute(cfg, in);
    code = o.passed ? kExitOk : kExitViolated;
  } catch (const InputError& e) {
    err << cfg.input << ": invalid input: " << e.what() << '\n';
    return kExitUsage;
  } catch (const NumericalError& e) {
    o.report = {{"command", command_name(cfg.command)}, {"error", e.what()}, {"passed", false}};
    code = kExitViolated;
    err << "numerical failure: " << e.what() << '\n';
  }

  const std::string body = cfg.format == Format::kCsv ? emit_plot_data(o.report) : o.report.dump(2) + "\n";
  if (cfg.output) {
    std::ofstream f(*cfg.output);
    if (!(f << body)) {
      err << "error: cannot write output '" << *cfg.output << "'\n";
      return kExitUsage;
    }
  } else {
    out << body;
  }
  return code;
}

int main_entry(int argc, char** argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Find points far from polynomial zero sets and refute plank coverings."};
  std::string command, format = "json";
  RunConfig cfg;
  std::string names;
  for (const auto& [n, c] : kCommands) names += (names.empty() ? "" : ", ") + n;
  app.add_option("command", command, "One of: " + names)->required();
  app.add_option("-i,--input", cfg.input, "Input JSON file, or - for stdin")->required();
  app.add_option("-o,--output", cfg.output, "Write the report here instead of stdout");
  app.add_option("--seed", cfg.seed, "Seed for all randomness")->capture_default_str();
  app.add_option("--tol", cfg.tol, "Tolerance for bound checks")->capture_default_str();
  app.add_option("--starts", cfg.starts, "Optimizer starts")->capture_default_str();
  app.add_option("--format", format, "Report format")->check(CLI::IsMember({"json", "csv"}))->capture_default_str();
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e, out, err);
    return rc == 0 ? kExitOk : kExitUsage;
  }
  const auto cmd = parse_command(command);
  if (!cmd) {
    err << "error: unknown command '" << command << "' (expected one of: " << names << ")\n";
    return kExitUsage;
  }
  cfg.command = *cmd;
  cfg.format = format == "csv" ? Format::kCsv : Format::kJson;
  if (!(cfg.tol > 0.0) || cfg.starts < 1) {
    err << "error: --tol must be positive and --starts at least 1\n";
    return kExitUsage;
  }
  return run(cfg, out, err);
}

}  // namespace planks::cli
