#include "pellforms/cli.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <optional>
#include <stdexcept>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "pellforms/classgroup.hpp"
#include "pellforms/error.hpp"
#include "pellforms/primitive.hpp"
#include "pellforms/sampling.hpp"
#include "pellforms/torsor.hpp"
#include "pellforms/verify.hpp"

namespace pellforms {

namespace {

using Json = nlohmann::ordered_json;

constexpr long kDefaultBound = 20;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

Json jint(const Int& v) {
  if (v.fits_slong_p()) return v.get_si();
  return v.get_str();
}

Json jform(const Form& f) { return Json::array({jint(f.a), jint(f.b), jint(f.c)}); }

Json jpoint(const ConicPoint& p) { return Json{{"x", p.x.str()}, {"y", p.y.str()}}; }

Json jtorsor(const TorsorPoint& p) { return Json{{"t", p.t.str()}, {"u", p.u.str()}}; }

struct Globals {
  std::string delta;
  bool json = false;
  std::uint64_t seed = 0;
  std::optional<long> bound;
};

struct Context {
  const Globals& g;
  std::ostream& out;

  PellConic conic() const {
    if (g.delta.empty()) throw UsageError("--delta is required");
    return PellConic::fundamental(parse_int(g.delta));
  }

  long bound() const {
    if (g.bound) return *g.bound;
    if (const char* env = std::getenv("PELLFORMS_BOUND")) return parse_int(env).get_si();
    return kDefaultBound;
  }

  void emit(const Json& j, const std::string& text) const {
    if (g.json) {
      out << j.dump() << '\n';
    } else {
      out << text << '\n';
    }
  }
};

void need(const std::vector<std::string>& args, std::size_t n, const std::string& synopsis) {
  if (args.size() != n) throw UsageError("expected: " + synopsis);
}

F2ClassRep as_f2(const ClassRep& r) {
  if (const auto* f2 = std::get_if<F2ClassRep>(&r)) return *f2;
  throw Error(ErrorKind::InvalidClassRep, "expected an F2[A,beta] representative");
}

void emit_rep(const Context& ctx, const PellConic& c, const ClassRep& r) {
  std::visit(
      [&](const auto& rep) {
        const Form f = rep.form(c);
        ctx.emit(Json{{"rep", rep.str()}, {"form", jform(f)}}, rep.str() + " " + f.str());
      },
      r);
}

/// Class rep text, or a form "(a,b,c)" with positive leading coefficient.
ClassRep parse_rep_or_form(const PellConic& c, const std::string& text) {
  if (!text.empty() && text.front() == '(') {
    const Form f = parse_form(text);
    if (f.discriminant() != c.delta) throw Error(ErrorKind::MixedDiscriminants, f.str());
    return FClassRep::of(c, f);
  }
  return parse_class_rep(c, text);
}

// ---- form -------------------------------------------------------------------

void cmd_form(const Context& ctx, const std::string& action, const std::vector<std::string>& args) {
  const PellConic c = ctx.conic();
  if (action == "compose") {
    need(args, 2, "form compose REP REP");
    const ClassRep a = parse_rep_or_form(c, args[0]);
    const ClassRep b = parse_rep_or_form(c, args[1]);
    if (a.index() != b.index()) throw Error(ErrorKind::InvalidClassRep, "cannot compose F and F2 representatives");
    if (const auto* fa = std::get_if<FClassRep>(&a)) {
      emit_rep(ctx, c, f_compose(c, *fa, std::get<FClassRep>(b)));
    } else {
      emit_rep(ctx, c, f2_compose(c, std::get<F2ClassRep>(a), std::get<F2ClassRep>(b)));
    }
  } else if (action == "square") {
    need(args, 1, "form square REP");
    const ClassRep a = parse_rep_or_form(c, args[0]);
    if (const auto* fa = std::get_if<FClassRep>(&a)) {
      emit_rep(ctx, c, f2_square(c, *fa));
    } else {
      const F2ClassRep& s = std::get<F2ClassRep>(a);
      emit_rep(ctx, c, f2_compose(c, s, s));
    }
  } else if (action == "reduce") {
    need(args, 1, "form reduce (a,b,c)");
    const ReducedForm r = reduce(c, parse_form(args[0]));
    const IntMat2& m = r.certificate;
    ctx.emit(Json{{"form", jform(r.form)},
                  {"certificate", Json::array({Json::array({jint(m.a), jint(m.b)}), Json::array({jint(m.c), jint(m.d)})})}},
             r.form.str() + " via " + m.str());
  } else if (action == "equiv") {
    need(args, 2, "form equiv (a,b,c) (a,b,c)");
    const bool eq = is_properly_equivalent(c, parse_form(args[0]), parse_form(args[1]));
    ctx.emit(Json{{"equivalent", eq}}, eq ? "true" : "false");
  } else {
    throw UsageError("form compose|square|reduce|equiv");
  }
}

// ---- classgroup -------------------------------------------------------------

void cmd_classgroup(const Context& ctx, bool squares) {
  const PellConic c = ctx.conic();
  const ClassGroup full = narrow_class_group(c.delta);
  const ClassGroup g = squares ? squares_subgroup(full) : full;
  if (ctx.g.json) {
    Json reps = Json::array();
    for (std::size_t i = 0; i < g.order(); ++i) {
      reps.push_back(Json{{"form", jform(g.reps[i])}, {"order", g.element_order(i)}});
    }
    ctx.emit(Json{{"delta", jint(c.delta)}, {"order", g.order()}, {"identity", g.identity}, {"classes", reps},
                  {"table", g.table}},
             "");
    return;
  }
  ctx.out << "order " << g.order() << '\n';
  for (std::size_t i = 0; i < g.order(); ++i) {
    ctx.out << i << ' ' << g.reps[i].str() << " order " << g.element_order(i) << '\n';
  }
}

// ---- conic ------------------------------------------------------------------

void cmd_conic(const Context& ctx, const std::string& action, const std::vector<std::string>& args) {
  const PellConic c = ctx.conic();
  auto on_conic = [&](const std::string& text) {
    const ConicPoint p = parse_point(text);
    if (!conic_contains(c, p)) throw Error(ErrorKind::NotOnConic, p.str());
    return p;
  };
  auto show = [&](const ConicPoint& p) { ctx.emit(jpoint(p), p.str()); };
  if (action == "add" || action == "sub") {
    need(args, 2, "conic " + action + " POINT POINT");
    const ConicPoint a = on_conic(args[0]);
    const ConicPoint b = on_conic(args[1]);
    show(action == "add" ? conic_add(c, a, b) : conic_sub(c, a, b));
  } else if (action == "neg") {
    need(args, 1, "conic neg POINT");
    show(conic_neg(c, on_conic(args[0])));
  } else if (action == "on") {
    need(args, 1, "conic on POINT");
    const bool on = conic_contains(c, parse_point(args[0]));
    ctx.emit(Json{{"on", on}}, on ? "true" : "false");
  } else {
    throw UsageError("conic add|sub|neg|on");
  }
}

// ---- point ------------------------------------------------------------------

PrimitiveData primitive_or_throw(const PellConic& c, const ConicPoint& p) {
  if (!conic_contains(c, p)) throw Error(ErrorKind::NotOnConic, p.str());
  const auto d = analyze_point(c, p);
  if (!d) throw Error(ErrorKind::NotPrimitive, p.str());
  return *d;
}

void cmd_point(const Context& ctx, const std::string& action, const std::vector<std::string>& args) {
  const PellConic c = ctx.conic();
  if (action == "analyze") {
    need(args, 1, "point analyze POINT");
    const PrimitiveData d = primitive_or_throw(c, parse_point(args[0]));
    const Form f = d.form.form(c);
    ctx.emit(Json{{"A", jint(d.A)},
                  {"beta", jint(d.beta)},
                  {"quotient", d.quotient.str()},
                  {"numerator", d.numerator.str()},
                  {"form", jform(f)},
                  {"ideal", d.ideal_str()}},
             "A=" + d.A.get_str() + " A2N=" + d.a2_norm.get_str() + " a=" + d.inverse.get_str() + " b=" +
                 d.b.get_str() + " beta=" + d.beta.get_str() + " quotient=" + d.quotient.str() +
                 " numerator=" + d.numerator.str() + " form=" + f.str() + " ideal=" + d.ideal_str());
  } else if (action == "phi") {
    need(args, 1, "point phi POINT");
    const ConicPoint p = parse_point(args[0]);
    const PrimitiveData d = primitive_or_throw(c, p);
    const TorsorPoint q = phi(p, d);
    ctx.emit(Json{{"rep", d.form.str()}, {"point", jtorsor(q)}}, d.form.str() + " " + q.str());
  } else if (action == "phi-inv") {
    need(args, 2, "point phi-inv F2[A,beta] TORSORPOINT");
    const ConicPoint p = phi_inv(c, as_f2(parse_class_rep(c, args[0])), parse_torsor_point(args[1]));
    ctx.emit(jpoint(p), p.str());
  } else if (action == "decompose") {
    need(args, 1, "point decompose POINT");
    const ConicPoint p = parse_point(args[0]);
    const PrimitiveData d = primitive_or_throw(c, p);
    const auto k = decompose_kernel(c, p, d);
    if (!k) {
      ctx.emit(Json{{"decomposable", false}, {"form", jform(d.form.form(c))}}, "none");
      return;
    }
    ctx.emit(Json{{"decomposable", true}, {"rational", jpoint(k->rational)}, {"integral", jpoint(k->integral)}},
             "rational " + k->rational.str() + " integral " + k->integral.str());
  } else {
    throw UsageError("point analyze|phi|phi-inv|decompose");
  }
}

// ---- torsor -----------------------------------------------------------------

TorsorPoint on_torsor(const PellConic& c, const F2ClassRep& q, const std::string& text) {
  const TorsorPoint p = parse_torsor_point(text);
  if (q.eval(c, p) != QElem(1)) throw Error(ErrorKind::NotOnTorsor, p.str() + " on " + q.form(c).str());
  return p;
}

void cmd_torsor(const Context& ctx, const std::string& action, const std::vector<std::string>& args,
                const std::string& field_opt, const std::string& form_opt) {
  const PellConic c = ctx.conic();
  if (action == "mu") {
    need(args, 3, "torsor mu F2[A,beta] TORSORPOINT POINT");
    const F2ClassRep q = as_f2(parse_class_rep(c, args[0]));
    const TorsorPoint tq = on_torsor(c, q, args[1]);
    const ConicPoint p = parse_point(args[2]);
    if (!conic_contains(c, p)) throw Error(ErrorKind::NotOnConic, p.str());
    const TorsorPoint r = mu(c, q, tq, p);
    ctx.emit(jtorsor(r), r.str());
  } else if (action == "nu") {
    need(args, 3, "torsor nu F2[A,beta] TORSORPOINT TORSORPOINT");
    const F2ClassRep q = as_f2(parse_class_rep(c, args[0]));
    const ConicPoint p = nu(c, q, on_torsor(c, q, args[1]), on_torsor(c, q, args[2]));
    ctx.emit(jpoint(p), p.str());
  } else if (action == "circ") {
    need(args, 4, "torsor circ F2[A,beta] TORSORPOINT F2[A,beta] TORSORPOINT");
    const F2ClassRep q1 = as_f2(parse_class_rep(c, args[0]));
    const F2ClassRep q2 = as_f2(parse_class_rep(c, args[2]));
    const CircResult r = circ(c, q1, parse_torsor_point(args[1]), q2, parse_torsor_point(args[3]));
    ctx.emit(Json{{"rep", r.form.str()}, {"form", jform(r.form.form(c))}, {"point", jtorsor(r.point)}},
             r.form.str() + " " + r.point.str());
  } else if (action == "axioms") {
    need(args, 1, "torsor axioms F2[A,beta] [--field f]");
    const F2ClassRep q = as_f2(parse_class_rep(c, args[0]));
    const Int field = field_opt.empty() ? Int(-1) : parse_int(field_opt);
    std::vector<TorsorPoint> qs = integral_torsor_points(c, q, field, ctx.bound());
    if (qs.size() > 8) qs.resize(8);
    Rng rng(ctx.g.seed);
    std::vector<ConicPoint> ps{ConicPoint::identity()};
    for (int i = 0; i < 6; ++i) ps.push_back(random_conic_point(c, i % 2 == 0 ? Int(0) : field, rng));
    const AxiomReport r = phs_axioms_check(c, q, qs, ps);
    Json violations = r.violations;
    ctx.emit(Json{{"rep", q.str()},
                  {"torsor_points", qs.size()},
                  {"checked", r.checked},
                  {"violations", violations},
                  {"ok", r.ok()}},
             q.str() + ": " + std::to_string(qs.size()) + " torsor points, " + std::to_string(r.checked) +
                 " checks, " + std::to_string(r.violations.size()) + " violations");
    if (!r.ok()) throw Error(ErrorKind::NotOnTorsor, "PHS axiom violated");
  } else if (action == "cocycle") {
    ConicPoint p;
    TorsorPoint q;
    PrimitiveData d;
    bool speculative = false;
    if (!form_opt.empty()) {
      // Speculative: a torsor point found by search stands in for phi(P).
      need(args, 0, "torsor cocycle --form F2[A,beta] [--field f]");
      const F2ClassRep rep = as_f2(parse_class_rep(c, form_opt));
      const Int field = field_opt.empty() ? Int(-1) : parse_int(field_opt);
      const auto found = integral_torsor_points(c, rep, field, ctx.bound());
      const auto it = std::find_if(found.begin(), found.end(), [](const TorsorPoint& t) {
        return !t.t.is_rational() || !t.u.is_rational();
      });
      if (found.empty()) throw Error(ErrorKind::NotOnTorsor, "no integral torsor point within the search bound");
      q = it != found.end() ? *it : found.front();
      p = phi_inv(c, rep, q);
      d = *analyze_point(c, p);
      speculative = true;
    } else {
      need(args, 1, "torsor cocycle POINT | torsor cocycle --form F2[A,beta]");
      p = parse_point(args[0]);
      d = primitive_or_throw(c, p);
      q = phi(p, d);
    }
    const Cocycle f = xi_cocycle(c, d, q);
    ctx.emit(Json{{"rep", d.form.str()},
                  {"q", jtorsor(q)},
                  {"point", jpoint(p)},
                  {"f_id", jpoint(f.at_identity)},
                  {"f_tau", jpoint(f.at_tau)},
                  {"cocycle_condition", satisfies_cocycle_condition(c, f)},
                  {"speculative", speculative}},
             std::string(speculative ? "speculative " : "") + "q=" + q.str() + " f(id)=" + f.at_identity.str() +
                 " f(tau)=" + f.at_tau.str());
  } else {
    throw UsageError("torsor mu|nu|circ|axioms|cocycle");
  }
}

// ---- sha census -------------------------------------------------------------

void emit_census(const Context& ctx, const std::vector<ObstructionRecord>& records) {
  for (const ObstructionRecord& r : records) {
    ctx.emit(Json{{"delta", jint(r.delta)},
                  {"form", jform(r.form)},
                  {"rational_point", r.rational_point.str()},
                  {"integral", r.integral},
                  {"class_order", r.class_order}},
             "delta=" + r.delta.get_str() + " form=" + r.form.str() + " rational_point=" + r.rational_point.str() +
                 " integral=" + (r.integral ? "true" : "false") + " class_order=" + std::to_string(r.class_order));
  }
}

void cmd_census(const Context& ctx, const std::string& action, const std::string& from, const std::string& to) {
  if (action != "census") throw UsageError("sha census [--from D --to D]");
  if (from.empty() != to.empty()) throw UsageError("--from and --to go together");
  if (from.empty()) {
    emit_census(ctx, sha_census(ctx.conic().delta));
    return;
  }
  const long lo = parse_int(from).get_si();
  const long hi = parse_int(to).get_si();
  if (lo > hi) throw UsageError("--from must not exceed --to");
  std::vector<long> deltas;
  for (long d = lo; d <= hi; ++d) {
    if (is_fundamental_discriminant(Int(d))) deltas.push_back(d);
  }
  std::vector<std::vector<ObstructionRecord>> results(deltas.size());
  std::vector<std::string> failures(deltas.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < deltas.size(); i = next++) {
      try {
        results[i] = sha_census(Int(deltas[i]));
      } catch (const Error& e) {
        failures[i] = e.what();
      }
    }
  };
  const unsigned n = std::max(1u, std::min<unsigned>(std::thread::hardware_concurrency(), 16));
  std::vector<std::thread> pool;
  for (unsigned i = 0; i < n; ++i) pool.emplace_back(worker);
  for (std::thread& t : pool) t.join();
  for (std::size_t i = 0; i < deltas.size(); ++i) {
    if (!failures[i].empty()) throw Error(ErrorKind::TooLarge, failures[i]);
    emit_census(ctx, results[i]);
  }
}

// ---- verify -----------------------------------------------------------------

bool cmd_verify(const Context& ctx, std::size_t trials) {
  SuiteOptions opts;
  opts.seed = ctx.g.seed;
  opts.trials = trials;
  opts.search_bound = ctx.bound();
  bool all = true;
  for (const std::string& name : property_names()) {
    const PropertyResult r = run_property(name, opts);
    all = all && r.passed();
    Json j{{"property", r.name}, {"cases", r.cases}, {"failed", r.failed}, {"passed", r.passed()}};
    if (!r.examples.empty()) j["examples"] = r.examples;
    std::string text = std::string(r.passed() ? "PASS " : "FAIL ") + r.name + " (" + std::to_string(r.cases) +
                       " cases, " + std::to_string(r.failed) + " failed)";
    for (const std::string& e : r.examples) text += "\n  " + e;
    ctx.emit(j, text);
  }
  return all;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Pell conic arithmetic, quadratic form composition and torsor checks"};
  app.name("pellforms");
  app.require_subcommand(1);
  app.fallthrough();

  Globals g;
  app.add_option("--delta", g.delta, "fundamental discriminant");
  app.add_flag("--json", g.json, "line-delimited JSON output");
  app.add_option("--seed", g.seed, "seed for sampled checks (default 0)");
  app.add_option_function<long>("--bound", [&](const long& b) { g.bound = b; }, "search bound (env PELLFORMS_BOUND)");

  std::string action;
  std::vector<std::string> rest;
  auto leaf = [&](const std::string& name, const std::string& help, const std::vector<std::string>& actions) {
    CLI::App* sub = app.add_subcommand(name, help);
    if (!actions.empty()) sub->add_option("action", action, "one of the listed actions")->required()->check(CLI::IsMember(actions));
    sub->add_option("args", rest, "arguments");
    return sub;
  };

  CLI::App* form = leaf("form", "compose, square, reduce or compare forms", {"compose", "square", "reduce", "equiv"});
  bool squares = false;
  CLI::App* cg = leaf("classgroup", "narrow class group", {});
  cg->add_flag("--squares", squares, "subgroup of squares");
  CLI::App* conic = leaf("conic", "Pell conic group law", {"add", "sub", "neg", "on"});
  CLI::App* point = leaf("point", "primitive points", {"analyze", "phi", "phi-inv", "decompose"});
  std::string field_opt, form_opt;
  CLI::App* torsor = leaf("torsor", "torsor maps and checks", {"mu", "nu", "circ", "axioms", "cocycle"});
  torsor->add_option("--field", field_opt, "squarefree m of Q(sqrt m) for searches (default -1)");
  torsor->add_option("--form", form_opt, "cocycle of a search-found point on this F2 torsor (speculative)");
  std::string from, to;
  CLI::App* sha = leaf("sha", "obstruction census", {"census"});
  sha->add_option("--from", from, "first discriminant of a sweep");
  sha->add_option("--to", to, "last discriminant of a sweep");
  std::size_t trials = 200;
  CLI::App* verify = leaf("verify", "run the property suite", {});
  verify->add_option("--trials", trials, "base sample count");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << e.what() << '\n' << app.help();
    return kExitUsage;
  }

  const Context ctx{g, out};
  try {
    if (*form) {
      cmd_form(ctx, action, rest);
    } else if (*cg) {
      if (!rest.empty()) throw UsageError("classgroup takes no arguments");
      cmd_classgroup(ctx, squares);
    } else if (*conic) {
      cmd_conic(ctx, action, rest);
    } else if (*point) {
      cmd_point(ctx, action, rest);
    } else if (*torsor) {
      cmd_torsor(ctx, action, rest, field_opt, form_opt);
    } else if (*sha) {
      if (!rest.empty()) throw UsageError("sha census takes no positional arguments");
      cmd_census(ctx, action, from, to);
    } else if (*verify) {
      if (!rest.empty()) throw UsageError("verify takes no positional arguments");
      if (!g.delta.empty()) ctx.conic();
      return cmd_verify(ctx, trials) ? kExitOk : kExitDomainError;
    }
  } catch (const UsageError& e) {
    err << "usage: " << e.what() << '\n' << app.help();
    return kExitUsage;
  } catch (const Error& e) {
    err << e.what() << '\n';
    // Malformed argument text is a usage problem, not a domain one.
    if (e.kind() == ErrorKind::ParseError) {
      err << app.help();
      return kExitUsage;
    }
    return kExitDomainError;
  }
  return kExitOk;
}

}  // namespace pellforms
