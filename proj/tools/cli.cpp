#include "cli.hpp"

#include <CLI11.hpp>
#include <charconv>
#include <fstream>
#include <json.hpp>
#include <list>
#include <sstream>

#include "carnot/csets.hpp"
#include "carnot/density.hpp"
#include "carnot/f23.hpp"
#include "carnot/free_lie.hpp"
#include "carnot/identities.hpp"
#include "carnot/rectifier.hpp"
#include "carnot/semigroup.hpp"

namespace carnot::cli {

namespace {

using Json = nlohmann::ordered_json;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string fmt_double(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) out.push_back(cur);
  if (!s.empty() && s.back() == sep) out.emplace_back();
  return out;
}

Rational parse_q(const std::string& s) {
  try {
    return parse_rational(s);
  } catch (const std::exception&) {
    throw UsageError("not a rational number: '" + s + "'");
  }
}

std::array<Rational, 5> parse_point(const std::string& s) {
  const auto parts = split(s, ',');
  if (parts.size() != 5) throw UsageError("a point needs 5 comma-separated coordinates, got '" + s + "'");
  std::array<Rational, 5> p;
  for (int i = 0; i < 5; ++i) p[i] = parse_q(parts[i]);
  return p;
}

std::vector<double> parse_doubles(const std::string& s) {
  std::vector<double> out;
  for (const auto& t : split(s, ',')) out.push_back(to_double(parse_q(t)));
  return out;
}

template <class P>
Json point_json(const P& p, bool exact) {
  Json a = Json::array();
  for (std::size_t i = 0; i < 5; ++i) {
    if constexpr (std::is_same_v<std::decay_t<decltype(p[i])>, Rational>) {
      if (exact)
        a.push_back(to_string(p[i]));
      else
        a.push_back(to_double(p[i]));
    } else {
      a.push_back(p[i]);
    }
  }
  return a;
}

Json header(const std::string& command) {
  Json j;
  j["schema"] = 1;
  j["command"] = command;
  return j;
}

void emit(std::ostream& out, const Json& j) { out << j.dump(2) << '\n'; }

void require_json(const std::string& format, const std::string& command) {
  if (!format.empty() && format != "json") throw UsageError(command + " only supports --format json");
}

struct Common {
  std::uint64_t seed = 1;
  std::uint64_t samples = 0;
  std::size_t depth = 0;
  std::string format;
  bool exact = false;
  unsigned threads = 0;
};

void add_seed(CLI::App* c, Common& o) { c->add_option("--seed", o.seed, "64-bit seed"); }
void add_samples(CLI::App* c, Common& o, std::uint64_t def) {
  o.samples = def;
  c->add_option("--samples,--n", o.samples, "number of samples")->capture_default_str();
}
void add_format(CLI::App* c, Common& o) {
  c->add_option("--format", o.format, "output format")->check(CLI::IsMember({"json", "csv"}));
}
void add_threads(CLI::App* c, Common& o) {
  c->add_option("--threads", o.threads, "worker threads, 0 = all cores (output does not depend on it)");
}

// ---- group law ------------------------------------------------------------

template <class T>
Pt2<T> to_pt2(const std::array<Rational, 5>& p) {
  Pt2<T> r;
  for (int i = 0; i < 5; ++i) {
    if constexpr (std::is_same_v<T, Rational>)
      r[i] = p[i];
    else
      r[i] = to_double(p[i]);
  }
  return r;
}

template <class T>
Pt1<T> to_pt1(const std::array<Rational, 5>& p) {
  Pt1<T> r;
  const Pt2<T> q = to_pt2<T>(p);
  for (int i = 0; i < 5; ++i) r[i] = q[i];
  return r;
}

template <class T>
Json do_mul(const std::array<Rational, 5>& x, const std::array<Rational, 5>& y, const std::string& chart, bool exact) {
  Json j = header("mul");
  j["chart"] = chart;
  j["exact"] = exact;
  if (chart == "second")
    j["result"] = point_json(mul2(to_pt2<T>(x), to_pt2<T>(y)), exact);
  else
    j["result"] = point_json(mul1(to_pt1<T>(x), to_pt1<T>(y)), exact);
  return j;
}

template <class T>
Json do_coords(const std::array<Rational, 5>& x, const std::string& from, bool exact) {
  Json j = header("coords");
  j["from"] = from;
  j["to"] = from == "second" ? "first" : "second";
  j["exact"] = exact;
  if (from == "second")
    j["result"] = point_json(to_first(to_pt2<T>(x)), exact);
  else
    j["result"] = point_json(to_second(to_pt1<T>(x)), exact);
  return j;
}

template <class T>
Json do_flow(const std::array<Rational, 5>& x, const Rational& a, const Rational& t, bool exact) {
  T aa, tt;
  if constexpr (std::is_same_v<T, Rational>) {
    aa = a;
    tt = t;
  } else {
    aa = to_double(a);
    tt = to_double(t);
  }
  Json j = header("flow");
  j["exact"] = exact;
  j["result"] = point_json(mul2(to_pt2<T>(x), flow_horiz(aa, tt)), exact);
  return j;
}

// ---- rectifier --------------------------------------------------------------

Json lie_list(const std::vector<LieVec>& v) {
  Json a = Json::array();
  for (const auto& x : v) a.push_back(to_string(x));
  return a;
}

Json state_json(const DirectionState& s) {
  Json j;
  j["stage"] = s.stage == Stage::PreTangent ? "pre-tangent" : "post-tangent";
  j["invariant_basis"] = lie_list(s.invariant_basis());
  j["monotone"] = lie_list(s.monotone);
  return j;
}

Json verdict_json(const Verdict& v, bool replay_ok) {
  Json j = header("rectify");
  j["verdict"] = to_string(v.kind);
  j["residual_layers"] = v.residual_layers;
  j["normal_became_invariant"] = v.normal_became_invariant;
  j["scope"] = v.scope;
  j["citations"] = v.citations;
  j["replay_ok"] = replay_ok;
  j["initial_state"] = state_json(v.initial);
  j["final_state"] = state_json(v.final_state);
  Json log = Json::array();
  for (const auto& e : v.log.entries) {
    Json r;
    r["rule"] = to_string(e.rule);
    r["premises"] = lie_list(e.premises);
    if (e.rule == RuleKind::Adjoint) {
      r["expansion"] = lie_list(e.expansion);
      r["top_degree"] = e.top_degree;
    }
    r["new_invariants"] = lie_list(e.new_invariants);
    r["new_monotone"] = lie_list(e.new_monotone);
    log.push_back(r);
  }
  j["log"] = log;
  return j;
}

std::vector<std::size_t> parse_indices(const std::string& s, std::size_t dim) {
  std::vector<std::size_t> out;
  if (s.empty()) return out;
  for (const auto& t : split(s, ',')) {
    long v = 0;
    auto res = std::from_chars(t.data(), t.data() + t.size(), v);
    if (res.ec != std::errc() || res.ptr != t.data() + t.size() || v < 1 || static_cast<std::size_t>(v) > dim)
      throw UsageError("basis index must be in 1.." + std::to_string(dim) + ", got '" + t + "'");
    out.push_back(static_cast<std::size_t>(v - 1));
  }
  return out;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact computations and experiments for constant-normal sets in Carnot groups"};
  app.require_subcommand(1, 1);
  app.set_help_all_flag("--help-all", "expand help for all subcommands");
  std::function<int()> action;
  // Per-subcommand storage so defaults of one command never leak into another.
  std::list<Common> store;
  std::list<std::string> strs;
  std::string y_str, chart = "second";

  {
    Common& o = store.emplace_back();
    std::string& x_str = strs.emplace_back();
    auto* c = app.add_subcommand("mul", "group product in second-kind (default) or first-kind coordinates");
    c->add_option("--x", x_str, "left factor a,b,c,d,e")->required();
    c->add_option("--y", y_str, "right factor a,b,c,d,e")->required();
    c->add_option("--chart", chart, "coordinates of inputs and output")->check(CLI::IsMember({"second", "first"}));
    c->add_flag("--exact", o.exact, "exact rationals (default: doubles)");
    add_format(c, o);
    c->callback([&] {
      action = [&] {
        require_json(o.format, "mul");
        const auto x = parse_point(x_str), y = parse_point(y_str);
        emit(out, o.exact ? do_mul<Rational>(x, y, chart, true) : do_mul<double>(x, y, chart, false));
        return kOk;
      };
    });
  }
  {
    Common& o = store.emplace_back();
    std::string& x_str = strs.emplace_back();
    auto* c = app.add_subcommand("coords", "convert between second-kind and first-kind coordinates");
    c->add_option("--x", x_str, "point a,b,c,d,e")->required();
    c->add_option("--from", chart, "chart of the input")->check(CLI::IsMember({"second", "first"}));
    c->add_flag("--exact", o.exact, "exact rationals (default: doubles)");
    add_format(c, o);
    c->callback([&] {
      action = [&] {
        require_json(o.format, "coords");
        const auto x = parse_point(x_str);
        emit(out, o.exact ? do_coords<Rational>(x, chart, true) : do_coords<double>(x, chart, false));
        return kOk;
      };
    });
  }
  std::string a_str = "0", t_str = "1";
  {
    Common& o = store.emplace_back();
    std::string& x_str = strs.emplace_back();
    auto* c = app.add_subcommand("flow", "x * exp(t (a X1 + X2)) in second-kind coordinates");
    x_str = "0,0,0,0,0";
    c->add_option("--x", x_str, "starting point (default origin)");
    c->add_option("--a", a_str, "X1 coefficient");
    c->add_option("--t", t_str, "time");
    c->add_flag("--exact", o.exact, "exact rationals (default: doubles)");
    add_format(c, o);
    c->callback([&] {
      action = [&] {
        require_json(o.format, "flow");
        const auto x = parse_point(x_str);
        const Rational a = parse_q(a_str), t = parse_q(t_str);
        emit(out, o.exact ? do_flow<Rational>(x, a, t, true) : do_flow<double>(x, a, t, false));
        return kOk;
      };
    });
  }
  {
    Common& o = store.emplace_back();
    std::string& x_str = strs.emplace_back();
    auto* c = app.add_subcommand("member", "classify a point against the semigroup S (exact)");
    c->add_option("--x,--point", x_str, "point a,b,c,d,e in second-kind coordinates")->required();
    add_format(c, o);
    c->callback([&] {
      action = [&] {
        require_json(o.format, "member");
        const auto m = member_S(to_pt2<Rational>(parse_point(x_str)));
        Json j = header("member");
        j["verdict"] = to_string(m.verdict);
        j["P_value"] = to_string(m.p_value);
        j["residuals"] = {{"curve", to_string(m.curve_residual)}, {"critical", to_string(m.critical_residual)}};
        emit(out, j);
        return kOk;
      };
    });
  }
  std::vector<std::string> steps;
  bool invert = false;
  {
    Common& o = store.emplace_back();
    std::string& x_str = strs.emplace_back();
    auto* c = app.add_subcommand("zigzag", "endpoint of a zig-zag, or (--invert) factor a point of S");
    c->add_option("--step", steps, "control a,b for one factor exp(a X1 + b X2); repeatable");
    c->add_flag("--invert", invert, "factor --x into W-controls (six for int S, three on P = 0)");
    c->add_option("--x,--point", x_str, "point to factor (with --invert)");
    add_format(c, o);
    c->callback([&] {
      action = [&]() -> int {
        require_json(o.format, "zigzag");
        Json j = header("zigzag");
        if (invert) {
          if (x_str.empty() || !steps.empty()) throw UsageError("--invert takes --x and no --step");
          const Pt2<Rational> x = to_pt2<Rational>(parse_point(x_str));
          ZigZag zz;
          try {
            const SVerdict v = member_S(x).verdict;
            zz = (v == SVerdict::BoundaryCurve || v == SVerdict::BoundarySurface) ? factor_boundary(x)
                                                                                    : factor_in_W6(x);
          } catch (const std::domain_error& e) {
            err << "zigzag: " << e.what() << '\n';
            return kVerificationFailed;
          }
          Json ctl = Json::array();
          for (const auto& s : zz.steps) ctl.push_back({to_string(s.a), to_string(s.b)});
          j["controls"] = ctl;
          j["round_trip"] = zigzag_endpoint(zz) == x;
          emit(out, j);
          return zigzag_endpoint(zz) == x ? kOk : kVerificationFailed;
        }
        if (steps.empty()) throw UsageError("zigzag needs at least one --step (or --invert)");
        ZigZag zz;
        for (const auto& s : steps) {
          const auto p = split(s, ',');
          if (p.size() != 2) throw UsageError("a step is 'a,b', got '" + s + "'");
          zz.steps.push_back({parse_q(p[0]), parse_q(p[1])});
        }
        bool in_w = true;
        for (const auto& s : zz.steps) in_w = in_w && sgn(s.b) >= 0;
        j["controls_in_W"] = in_w;
        j["endpoint"] = point_json(zigzag_endpoint(zz), true);
        emit(out, j);
        return kOk;
      };
    });
  }
  std::string chart_w = "first";
  {
    Common& o = store.emplace_back();
    std::string& x_str = strs.emplace_back();
    auto* c = app.add_subcommand("wedge", "membership in the wedge tangent to S (exact)");
    c->add_option("--x,--point", x_str, "point a,b,c,d,e")->required();
    c->add_option("--chart", chart_w, "coordinates of the input (default first)")
        ->check(CLI::IsMember({"second", "first"}));
    add_format(c, o);
    c->callback([&] {
      action = [&] {
        require_json(o.format, "wedge");
        const auto p = parse_point(x_str);
        const Pt1<Rational> a = chart_w == "first" ? to_pt1<Rational>(p) : to_first(to_pt2<Rational>(p));
        Json j = header("wedge");
        j["first_kind"] = point_json(a, true);
        j["member"] = member_wedge(a);
        emit(out, j);
        return kOk;
      };
    });
  }
  {
    Common& o = store.emplace_back();
    auto* c = app.add_subcommand("verify-identities", "run the exact identity suite, one PASS/FAIL line each");
    add_format(c, o);
    c->callback([&] {
      action = [&] {
        const auto checks = run_identity_suite();
        if (o.format == "json") {
          Json j = header("verify-identities");
          Json arr = Json::array();
          for (const auto& ch : checks)
            arr.push_back({{"id", ch.id},
                           {"description", ch.description},
                           {"passed", ch.passed},
                           {"informational", ch.informational},
                           {"detail", ch.detail}});
          j["checks"] = arr;
          j["all_passed"] = all_passed(checks);
          emit(out, j);
        } else if (o.format == "csv") {
          throw UsageError("verify-identities supports text (default) or --format json");
        } else {
          for (const auto& ch : checks)
            out << (ch.informational ? "INFO" : ch.passed ? "PASS" : "FAIL") << " [" << ch.id << "] "
                << ch.description << " (" << ch.detail << ")\n";
        }
        return all_passed(checks) ? kOk : kVerificationFailed;
      };
    });
  }
  std::string set_name = "halfspace";
  MonotonicityOptions mopts;
  {
    Common& o = store.emplace_back();
    auto* c = app.add_subcommand("monotone-check", "sample x in E, a X1 + b X2 in W, t > 0 and test x exp(tY) in E");
    c->add_option("--set", set_name, "E1, E2, S, halfspace, coneAB:a:b, pathE:depth, ...");
    add_seed(c, o);
    add_samples(c, o, 10000);
    c->add_option("--directions", mopts.n_directions, "directions per point")->capture_default_str();
    c->add_option("--times", mopts.n_times, "times per direction")->capture_default_str();
    add_format(c, o);
    c->callback([&] {
      action = [&] {
        require_json(o.format, "monotone-check");
        mopts.seed = o.seed;
        mopts.n_points = o.samples;
        const SetOracle oracle = resolve_oracle(set_name);
        const auto r = monotonicity_test(oracle, mopts);
        Json j = header("monotone-check");
        j["set"] = r.oracle;
        j["seed"] = o.seed;
        j["points"] = r.points;
        j["checks"] = r.checks;
        j["rejected"] = r.rejected;
        j["violations"] = r.violations;
        if (r.first_violation) {
          const auto& v = *r.first_violation;
          j["first_violation"] = {{"x", point_json(v.x, true)},
                                  {"a", to_string(v.a)},
                                  {"b", to_string(v.b)},
                                  {"t", to_string(v.t)}};
        }
        j["passed"] = r.passed();
        emit(out, j);
        return r.passed() ? kOk : kVerificationFailed;
      };
    });
  }
  std::string radii = "1", center = "0,0,0,0,0";
  {
    Common& o = store.emplace_back();
    auto* c = app.add_subcommand("density", "Monte-Carlo density of E in boxes at a point; CSV columns r,mean,ci,n,seed");
    c->add_option("--set", set_name, "set name");
    c->add_option("--r", radii, "comma-separated radii");
    c->add_option("--center,--x", center, "center point");
    add_seed(c, o);
    add_samples(c, o, 100000);
    add_threads(c, o);
    add_format(c, o);
    c->callback([&] {
      action = [&] {
        const SetOracle oracle = resolve_oracle(set_name);
        const auto rs = parse_doubles(radii);
        for (double r : rs)
          if (!(r > 0)) throw UsageError("radii must be positive");
        const auto ctr = to_pt2<double>(parse_point(center));
        const auto prof = density_profile(oracle, ctr, rs, o.samples, o.seed, o.threads);
        if (o.format != "json") {
          out << "r,mean,ci,n,seed\n";
          for (const auto& d : prof)
            out << fmt_double(d.radius) << ',' << fmt_double(d.mean) << ',' << fmt_double(d.half_width_95) << ','
                << d.n_samples << ',' << d.seed << '\n';
        } else {
          Json j = header("density");
          j["set"] = oracle.name;
          Json rows = Json::array();
          for (const auto& d : prof)
            rows.push_back({{"r", d.radius},
                            {"mean", d.mean},
                            {"ci", d.half_width_95},
                            {"hits", d.hits},
                            {"n", d.n_samples},
                            {"seed", d.seed}});
          j["estimates"] = rows;
          emit(out, j);
        }
        return kOk;
      };
    });
  }
  long n1 = 2;
  std::size_t lmax = 2;
  double threshold = 0.1;
  {
    Common& o = store.emplace_back();
    auto* c = app.add_subcommand(
        "blowup", "densities of blow-ups along two scale sequences; CSV columns l,branch,inv_r_cubed,mean,ci,n,seed");
    c->add_option("--n1", n1, "first element of n_{j+1} = n_j^3")->capture_default_str();
    c->add_option("--lmax", lmax, "largest l")->capture_default_str();
    c->add_option("--threshold", threshold, "required final gap")->capture_default_str();
    add_seed(c, o);
    add_samples(c, o, 1000000);
    add_threads(c, o);
    add_format(c, o);
    c->callback([&] {
      action = [&] {
        if (n1 < 2) throw UsageError("--n1 must be at least 2");
        if (lmax < 1) throw UsageError("--lmax must be at least 1");
        ZSpec spec;
        spec.n1 = n1;
        spec.depth = std::max<std::size_t>(spec.depth, 2 * lmax + 1);
        const auto r = blowup_experiment(spec, lmax, o.samples, o.seed, threshold, o.threads);
        if (o.format != "json") {
          out << "l,branch,inv_r_cubed,mean,ci,n,seed\n";
          auto rows = [&](const std::vector<BlowupPoint>& pts, const char* branch) {
            for (const auto& p : pts)
              out << p.l << ',' << branch << ',' << to_string(p.inv_r_cubed) << ',' << fmt_double(p.estimate.mean)
                  << ',' << fmt_double(p.estimate.half_width_95) << ',' << p.estimate.n_samples << ','
                  << p.estimate.seed << '\n';
          };
          rows(r.upper, "upper");
          rows(r.lower, "lower");
        } else {
          Json j = header("blowup");
          auto rows = [&](const std::vector<BlowupPoint>& pts) {
            Json a = Json::array();
            for (const auto& p : pts)
              a.push_back({{"l", p.l},
                           {"inv_r_cubed", to_string(p.inv_r_cubed)},
                           {"mean", p.estimate.mean},
                           {"ci", p.estimate.half_width_95},
                           {"n", p.estimate.n_samples},
                           {"seed", p.estimate.seed}});
            return a;
          };
          j["upper"] = rows(r.upper);
          j["lower"] = rows(r.lower);
          j["final_gap"] = r.final_gap;
          j["separated"] = r.separated();
          emit(out, j);
        }
        return r.separated() ? kOk : kVerificationFailed;
      };
    });
  }
  std::size_t max_level = 4;
  {
    Common& o = store.emplace_back();
    auto* c = app.add_subcommand("cantor", "Cantor construction for a_j = 1/(j+4)^2 and the slope witnesses");
    o.depth = 20;
    c->add_option("--depth", o.depth, "construction depth")->capture_default_str();
    c->add_option("--max-level", max_level, "largest level whose intervals are listed")->capture_default_str();
    add_format(c, o);
    c->callback([&] {
      action = [&]() -> int {
        if (o.depth < 1) throw UsageError("--depth must be at least 1");
        const CantorSpec spec = default_cantor_spec(o.depth);
        validate(spec);
        const std::size_t top = std::min(max_level, o.depth);
        if (o.format == "csv") {
          out << "level,index,lo,hi\n";
          for (std::size_t n = 0; n <= top; ++n) {
            const auto iv = cantor_level(spec, n);
            for (std::size_t i = 0; i < iv.size(); ++i)
              out << n << ',' << i << ',' << to_fraction_string(iv[i].lo) << ',' << to_fraction_string(iv[i].hi)
                  << '\n';
          }
          return kOk;
        }
        Json j = header("cantor");
        j["depth"] = o.depth;
        j["partial_sum"] = to_string(cantor_partial_sum(spec, o.depth));
        const bool below = certify_total_below_one(spec);
        j["certified_total_below_one"] = below;
        j["growth_onset"] = growth_onset(spec);
        Json levels = Json::array();
        for (std::size_t n = 0; n <= top; ++n) {
          Json iv = Json::array();
          for (const auto& i : cantor_level(spec, n)) iv.push_back({to_string(i.lo), to_string(i.hi)});
          levels.push_back({{"level", n}, {"intervals", iv}});
        }
        j["levels"] = levels;
        Json sw = Json::array();
        for (std::size_t n = 0; n + 1 <= o.depth; ++n) {
          const auto w = slope_witness(spec, n);
          sw.push_back({{"n", n},
                        {"q", to_string(w.q)},
                        {"qprime_cubed", to_string(w.qprime_cubed)},
                        {"slope", w.slope},
                        {"lower_bound", w.lower_bound},
                        {"boundary_residual", to_string(w.boundary_residual)}});
        }
        j["slope_witnesses"] = sw;
        emit(out, j);
        return below ? kOk : kVerificationFailed;
      };
    });
  }
  std::string algebra_file, free_spec, invariant_str;
  std::size_t normal = 0;
  bool no_promote = false;
  {
    Common& o = store.emplace_back();
    auto* c = app.add_subcommand("rectify", "propagate monotone and invariant directions; emits the verdict and log");
    auto* g = c->add_option("--algebra", algebra_file, "structure-constant table file");
    auto* f = c->add_option("--free", free_spec, "free nilpotent algebra 'rank,step' instead of a file");
    g->excludes(f);
    c->add_option("--normal", normal, "1-based index of the normal X_i")->required();
    c->add_option("--invariant", invariant_str, "1-based invariant indices (default: the rest of the first layer)");
    c->add_flag("--no-promote", no_promote, "skip the tangent promotion step");
    add_format(c, o);
    c->callback([&] {
      action = [&]() -> int {
        require_json(o.format, "rectify");
        AlgebraPtr alg;
        if (!algebra_file.empty()) {
          try {
            alg = CarnotAlgebra::from_table_file(algebra_file);
          } catch (const std::exception& e) {
            throw UsageError(std::string("cannot load algebra: ") + e.what());
          }
        } else if (!free_spec.empty()) {
          const auto p = split(free_spec, ',');
          if (p.size() != 2) throw UsageError("--free expects 'rank,step'");
          try {
            alg = free_nilpotent(std::stoi(p[0]), std::stoi(p[1])).algebra;
          } catch (const std::exception& e) {
            throw UsageError(std::string("bad --free: ") + e.what());
          }
        } else {
          throw UsageError("rectify needs --algebra or --free");
        }
        if (normal < 1 || normal > alg->dim()) throw UsageError("--normal out of range");
        std::vector<std::size_t> inv;
        if (invariant_str.empty()) {
          for (auto i : alg->layer_indices(1))
            if (i != normal - 1) inv.push_back(i);
        } else {
          inv = parse_indices(invariant_str, alg->dim());
        }
        RunOptions ro;
        ro.promote = !no_promote;
        Verdict v;
        try {
          v = run(alg, normal - 1, inv, ro);
        } catch (const InconsistentInput& e) {
          throw UsageError(e.what());
        }
        bool replay_ok = true;
        try {
          replay_ok = replay(v.initial, v.log) == v.final_state;
        } catch (const ReplayError&) {
          replay_ok = false;
        }
        emit(out, verdict_json(v, replay_ok));
        return replay_ok ? kOk : kVerificationFailed;
      };
    });
  }

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    // Subcommand help arrives as CallForHelp too; everything else is a usage error.
    err << "usage error: " << e.what() << '\n';
    return kUsage;
  }
  try {
    return action ? action() : kUsage;
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::invalid_argument& e) {
    err << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kVerificationFailed;
  }
}

}  // namespace carnot::cli
