#include "nabla/arcshell/session.hpp"

#include <chrono>
#include <sstream>

#include "nabla/error.hpp"

namespace nabla {

namespace {

std::string field_name(const FieldSpec& f) {
  return f.is_rationals() ? "QQ" : "F" + std::to_string(f.characteristic());
}

Json integer_json(const Integer& z) {
  if (z.fits_slong_p()) return Json(z.get_si());
  return Json(z.get_str());
}

Json dim_json(const std::optional<long>& d) { return d ? Json(*d) : Json("-inf"); }

std::string atom_text(const ClassAtom& atom) {
  if (atom.is_unit()) return "1";
  std::string s;
  for (std::size_t i = 0; i < atom.factors.size(); ++i) s += (i ? "*" : "") + ("[" + atom.factors[i].key + "]");
  return s;
}

std::vector<std::string> generator_strings(const Ideal& ideal) {
  std::vector<std::string> out;
  for (const auto& g : ideal.groebner().basis) out.push_back(g.to_string());
  return out;
}

}  // namespace

Json presentation_payload(const SchemePresentation& x) {
  return {{"kind", "presentation"},
          {"ring", field_name(x.ring()->field())},
          {"variables", x.ring()->variables()},
          {"generators", generator_strings(x.ideal())}};
}

Json class_payload(const MotivicClass& c) {
  Json terms = Json::array();
  for (const auto& t : c.terms()) {
    terms.push_back({{"atom", atom_text(*t.atom)}, {"coeff", integer_json(t.coeff)}, {"L_exp", t.l_exp}});
  }
  return {{"kind", "class"}, {"terms", terms}, {"text", c.to_string()}, {"dim", dim_json(class_dim(c))}};
}

namespace {

Json form_payload(const RationalSeriesForm& f) {
  Json poly = Json::array();
  for (const auto& c : f.polynomial) poly.push_back(class_payload(c));
  return {{"polynomial", poly},
          {"numerator", class_payload(f.tail.numerator)},
          {"q", f.tail.q},
          {"b", f.tail.b},
          {"k", f.tail.k},
          {"text", f.to_string()}};
}

}  // namespace

Json series_payload(const TruncatedSeries& s, const std::optional<RationalSeriesForm>& form) {
  Json coeffs = Json::array();
  for (const auto& c : s.coefficients) coeffs.push_back(class_payload(c));
  return {{"kind", "series"},
          {"series", to_string(s.kind)},
          {"system", s.system},
          {"coefficients", coeffs},
          {"lengths", s.lengths},
          {"closed_form", form ? form_payload(*form) : Json(nullptr)}};
}

Json ResultRecord::to_json() const {
  return {{"command", command},
          {"handle", handle},
          {"line", line},
          {"inputs", inputs},
          {"payload", payload},
          {"flags", {{"certified", flags.certified}, {"stabilized", flags.stabilized}, {"cache_hit", flags.cache_hit}}},
          {"cache_key", cache_key},
          {"engine_version", engine_version},
          {"timing_ms", timing_ms}};
}

Json strip_volatile(Json record) {
  if (record.is_object()) {
    record.erase("timing_ms");
    record.erase("cache_hit");
    for (auto& [k, v] : record.items()) v = strip_volatile(v);
  } else if (record.is_array()) {
    for (auto& v : record) v = strip_volatile(v);
  }
  return record;
}

namespace {

struct Value {
  enum class Kind { Ring, Ideal, Scheme, FatPoint, System, Class, Series, Integer, Opaque };

  Kind kind = Kind::Opaque;
  RingPtr ring;
  const Statement* ideal = nullptr;
  std::optional<SchemePresentation> scheme;
  std::optional<FatPoint> point;
  std::optional<PointSystem> system;
  std::optional<MotivicClass> cls;
  std::optional<TruncatedSeries> series;
  long integer = 0;
  Json canonical;
};

const char* kind_name(Value::Kind k) {
  switch (k) {
    case Value::Kind::Ring: return "a ring";
    case Value::Kind::Ideal: return "an ideal";
    case Value::Kind::Scheme: return "a scheme";
    case Value::Kind::FatPoint: return "a fat point";
    case Value::Kind::System: return "a point system";
    case Value::Kind::Class: return "a class";
    case Value::Kind::Series: return "a series";
    case Value::Kind::Integer: return "an integer";
    case Value::Kind::Opaque: return "a report";
  }
  return "";
}

Json scheme_canonical(const SchemePresentation& x, const char* type) {
  return {{"type", type},
          {"field", field_name(x.ring()->field())},
          {"variables", x.ring()->variables()},
          {"generators", generator_strings(x.ideal())}};
}

Value scheme_value(SchemePresentation x) {
  Value v;
  v.kind = Value::Kind::Scheme;
  v.canonical = scheme_canonical(x, "scheme");
  v.scheme = std::move(x);
  return v;
}

struct Outcome {
  Json payload;
  ResultFlags flags;
  std::optional<Value> value;
};

std::string strip_code_prefix(const Error& e) {
  std::string what = e.what();
  const auto prefix = std::string(to_string(e.code())) + ": ";
  return what.rfind(prefix, 0) == 0 ? what.substr(prefix.size()) : what;
}

}  // namespace

struct Session::Impl {
  Script script;
  ShellOptions options;
  ResultCache cache;
  std::map<const Statement*, FieldSpec> fields;
  std::map<const Statement*, Value> values;
  std::map<const Statement*, ResultRecord> records;

  Impl(Script s, ShellOptions o, WarningSink warn)
      : script(std::move(s)), options(std::move(o)), cache(options.cache_dir, std::move(warn)) {
    FieldSpec current = options.default_field;
    for (const auto& st : script.statements) {
      if (st.kind == StatementKind::Field) {
        current = st.prime ? FieldSpec::prime_field(*st.prime) : FieldSpec::rationals();
      }
      fields.emplace(&st, current);
    }
  }

  const Statement& statement(const std::string& name) const {
    const auto* st = script.find(name);
    if (!st) throw Error(ErrorCode::UnboundName, "'" + name + "' is not defined");
    return *st;
  }

  template <typename F>
  auto located(const Statement& st, F&& f) -> decltype(f()) {
    try {
      return f();
    } catch (const CommandError&) {
      throw;
    } catch (const Error& e) {
      throw CommandError(e.code(), st.line, render_statement(st), strip_code_prefix(e));
    }
  }

  const Value& value_of(const std::string& name) {
    const auto& st = statement(name);
    if (auto it = values.find(&st); it != values.end()) return it->second;
    Value v = located(st, [&] { return st.kind == StatementKind::Command ? command_value(st) : declare(st); });
    return values.emplace(&st, std::move(v)).first->second;
  }

  Value declare(const Statement& st) {
    Value v;
    switch (st.kind) {
      case StatementKind::Ring:
        v.kind = Value::Kind::Ring;
        v.ring = make_ring(fields.at(&st), st.variables);
        break;
      case StatementKind::Ideal:
        v.kind = Value::Kind::Ideal;
        v.ideal = &st;
        break;
      case StatementKind::Scheme:
      case StatementKind::FatPoint: {
        const auto& ring = expect(value_of(st.ring), Value::Kind::Ring, st.ring).ring;
        const auto* ideal = expect(value_of(st.ideal), Value::Kind::Ideal, st.ideal).ideal;
        std::vector<Polynomial> gens;
        for (const auto& g : ideal->generators) gens.push_back(evaluate_expr(*g, ring));
        SchemePresentation x(Ideal(ring, std::move(gens)), st.name);
        if (st.kind == StatementKind::Scheme) return scheme_value(std::move(x));
        v.kind = Value::Kind::FatPoint;
        v.point = make_fatpoint(x);
        v.scheme = std::move(x);
        v.canonical = scheme_canonical(*v.scheme, "fatpoint");
        break;
      }
      case StatementKind::System: {
        v.kind = Value::Kind::System;
        if (st.jets) {
          const auto& base = scheme_of(value_of(st.base), st.base);
          v.system = make_jet_system(base, st.point);
          Json point = Json::array();
          for (const auto& c : st.point) point.push_back(to_string(c));
          v.canonical = {{"type", "jets"}, {"base", scheme_canonical(base, "scheme")}, {"point", point}};
        } else {
          v.system = make_lsystem(fields.at(&st));
          v.canonical = {{"type", "lsystem"}, {"field", field_name(fields.at(&st))}};
        }
        break;
      }
      case StatementKind::Field:
      case StatementKind::Command:
        break;
    }
    return v;
  }

  static const Value& expect(const Value& v, Value::Kind kind, const std::string& name) {
    if (v.kind != kind) {
      throw Error(ErrorCode::InvalidArgument, "'" + name + "' is " + kind_name(v.kind) + ", expected " + kind_name(kind));
    }
    return v;
  }

  static const SchemePresentation& scheme_of(const Value& v, const std::string& name) {
    if (!v.scheme) {
      throw Error(ErrorCode::InvalidArgument, "'" + name + "' is " + std::string(kind_name(v.kind)) + ", expected a scheme");
    }
    return *v.scheme;
  }

  std::vector<Value> arguments(const Statement& st) {
    std::vector<Value> out;
    for (const auto& a : st.args) {
      if (a.kind == CommandArg::Kind::Integer) {
        Value v;
        v.kind = Value::Kind::Integer;
        v.integer = a.value;
        v.canonical = a.value;
        out.push_back(std::move(v));
      } else {
        out.push_back(value_of(a.name));
      }
    }
    return out;
  }

  Json inputs_of(const Statement& st, const std::vector<Value>& args) const {
    Json arr = Json::array();
    for (const auto& a : args) arr.push_back(a.canonical);
    Json in = {{"args", arr}};
    static const std::vector<std::string> deep = {"trace", "probe", "measure", "poincare"};
    static const std::vector<std::string> series = {"zeta", "poincare", "autozeta"};
    if (std::find(deep.begin(), deep.end(), st.command) != deep.end()) in["max_depth"] = options.max_depth;
    if (std::find(series.begin(), series.end(), st.command) != series.end()) in["truncation"] = options.truncation;
    return in;
  }

  // Value of a command result: rebuilt from the record for presentations,
  // recomputed otherwise (class and series values carry atoms the payload only names).
  Value command_value(const Statement& st) {
    const auto& rec = run(st);
    if (auto it = values.find(&st); it != values.end()) return it->second;
    const auto& p = rec.payload;
    if (p.value("kind", "") == "presentation") {
      auto ring = make_ring(p["ring"] == "QQ" ? FieldSpec::rationals()
                                              : FieldSpec::prime_field(std::stoull(p["ring"].get<std::string>().substr(1))),
                            p["variables"].get<std::vector<std::string>>());
      std::vector<Polynomial> gens;
      for (const auto& g : p["generators"]) gens.push_back(parse_polynomial(ring, g.get<std::string>()));
      return scheme_value(SchemePresentation(Ideal(ring, std::move(gens)), command_handle(st)));
    }
    auto out = compute(st, arguments(st), rec.cache_key);
    if (!out.value) {
      Value v;
      v.canonical = {{"type", "result"}, {"key", rec.cache_key}};
      return v;
    }
    return std::move(*out.value);
  }

  const ResultRecord& run(const Statement& st) {
    if (auto it = records.find(&st); it != records.end()) return it->second;
    return located(st, [&]() -> const ResultRecord& {
      const auto start = std::chrono::steady_clock::now();
      auto args = arguments(st);
      ResultRecord rec;
      rec.handle = command_handle(st);
      rec.command = render_statement(st);
      rec.line = st.line;
      rec.inputs = inputs_of(st, args);
      rec.cache_key = cache_key(st.command, rec.inputs);
      std::optional<Value> computed;
      auto fetched = cache.fetch(rec.cache_key, [&] {
        auto out = compute(st, args, rec.cache_key);
        computed = std::move(out.value);
        return Json{{"payload", out.payload},
                    {"flags", {{"certified", out.flags.certified}, {"stabilized", out.flags.stabilized}}}};
      });
      rec.payload = fetched.entry.at("payload");
      rec.flags.certified = fetched.entry.at("flags").at("certified").get<bool>();
      rec.flags.stabilized = fetched.entry.at("flags").at("stabilized").get<bool>();
      rec.flags.cache_hit = fetched.hit;
      rec.timing_ms = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start)
                          .count();
      if (computed) values.emplace(&st, std::move(*computed));
      return records.emplace(&st, std::move(rec)).first->second;
    });
  }

  static Value class_value(MotivicClass c, const std::string& key) {
    Value v;
    v.kind = Value::Kind::Class;
    v.cls = std::move(c);
    v.canonical = {{"type", "result"}, {"key", key}};
    return v;
  }

  static Value series_value(TruncatedSeries s, const std::string& key) {
    Value v;
    v.kind = Value::Kind::Series;
    v.series = std::move(s);
    v.canonical = {{"type", "result"}, {"key", key}};
    return v;
  }

  static long int_arg(const Value& v, const char* what) {
    if (v.kind != Value::Kind::Integer) {
      throw Error(ErrorCode::InvalidArgument, std::string(what) + " must be an integer");
    }
    return v.integer;
  }

  static unsigned level_arg(const Value& v, const char* what) {
    long n = int_arg(v, what);
    if (n < 0) throw Error(ErrorCode::InvalidArgument, std::string(what) + " must be non-negative");
    return static_cast<unsigned>(n);
  }

  static const FatPoint& point_arg(const Value& v, const std::string& name) {
    return *expect(v, Value::Kind::FatPoint, name).point;
  }

  static const PointSystem& system_arg(const Value& v, const std::string& name) {
    return *expect(v, Value::Kind::System, name).system;
  }

  Outcome compute(const Statement& st, const std::vector<Value>& args, const std::string& key) {
    auto name = [&](std::size_t i) {
      return st.args[i].kind == CommandArg::Kind::Name ? st.args[i].name : std::to_string(st.args[i].value);
    };
    const auto& cmd = st.command;
    Outcome out;
    out.flags.certified = true;
    if (cmd == "arc" || cmd == "autoarc") {
      const auto& fp = point_arg(args[0], name(0));
      ArcSpace arc = [&] {
        if (cmd == "autoarc") {
          if (args.size() == 2 && st.args[1].name != st.args[0].name) {
            throw Error(ErrorCode::InvalidArgument, "autoarc takes the same fat point twice");
          }
          return auto_arc(fp);
        }
        return weil_restrict(scheme_of(args[1], name(1)), fp);
      }();
      out.payload = presentation_payload(arc.presentation);
      out.value = scheme_value(arc.presentation);
    } else if (cmd == "reduce") {
      auto red = reduce_scheme(scheme_of(args[0], name(0)));
      out.payload = presentation_payload(red.reduced);
      out.payload["certificate"] = red.certificate;
      auto strip = strip_linear_variables(red.reduced.ideal());
      out.payload["polynomial_ring_in"] =
          strip.ideal.groebner().is_zero() ? Json(strip.kept.size()) : Json(nullptr);
      out.flags.certified = red.certified;
      out.value = scheme_value(red.reduced);
    } else if (cmd == "dim") {
      const long d = scheme_of(args[0], name(0)).dimension();
      out.payload = {{"kind", "dimension"}, {"value", d < 0 ? Json("-inf") : Json(d)}};
    } else if (cmd == "length") {
      out.payload = {{"kind", "integer"}, {"value", point_arg(args[0], name(0)).length()}};
    } else if (cmd == "simple") {
      auto v = classify_simple(point_arg(args[0], name(0)));
      Json witness = nullptr;
      if (v.witness) {
        witness = Json::array();
        for (const auto& c : *v.witness) witness.push_back(to_string(c));
      }
      out.payload = {{"kind", "verdict"},
                     {"verdict", to_string(v.verdict)},
                     {"affine_dim", v.verdict == Simplicity::Simple ? Json(v.affine_dim) : Json(nullptr)},
                     {"detail", v.detail},
                     {"witness", witness}};
      out.flags.certified = v.verdict != Simplicity::Inconclusive;
    } else if (cmd == "defect") {
      const long d = defect(scheme_of(args[0], name(0)), point_arg(args[1], name(1)), int_arg(args[2], "d"));
      out.payload = {{"kind", "integer"}, {"value", d}};
    } else if (cmd == "trace") {
      auto tr = stabilized_trace(scheme_of(args[0], name(0)), system_arg(args[1], name(1)),
                                 level_arg(args[2], "level"), options.max_depth);
      SchemePresentation quotient(tr.ideal);
      out.payload = presentation_payload(quotient);
      out.payload["level"] = tr.level;
      out.payload["probe_depth"] = tr.probe_depth;
      out.flags.stabilized = tr.stabilized;
      out.value = scheme_value(quotient);
    } else if (cmd == "probe") {
      auto r = stability_probe(scheme_of(args[0], name(0)), system_arg(args[1], name(1)),
                               level_arg(args[2], "n_max"));
      std::vector<std::string> evidence;
      for (auto e : r.evidence) evidence.push_back(to_string(e));
      out.payload = {{"kind", "probe"},     {"levels", r.levels},   {"lengths", r.lengths},
                     {"dims", r.dims},      {"defects", r.defects}, {"evidence", evidence}};
    } else if (cmd == "measure") {
      const auto& x = scheme_of(args[0], name(0));
      const auto& sys = system_arg(args[1], name(1));
      const long d = int_arg(args[3], "d");
      Measure m = args.size() == 4
                      ? measure_stable(x, sys, level_arg(args[2], "s"), d, options.max_depth)
                      : measure_rational_lax(x, sys, level_arg(args[2], "level"), d, int_arg(args[4], "l"),
                                             options.max_depth);
      out.payload = class_payload(m.value);
      out.payload["measure"] = args.size() == 4 ? "stable" : "rational_lax";
      out.payload["level"] = m.level;
      out.payload["length"] = m.length;
      out.flags.stabilized = m.trace.stabilized;
      out.value = class_value(m.value, key);
    } else if (cmd == "zeta" || cmd == "poincare") {
      const auto& x = scheme_of(args[0], name(0));
      const auto& sys = system_arg(args[1], name(1));
      const long d = int_arg(args[2], "d");
      auto s = cmd == "zeta" ? igusa_zeta_truncated(x, sys, options.truncation, d)
                             : poincare_truncated(x, sys, options.truncation, d, options.max_depth);
      out.payload = series_payload(s, recognize_rational(s));
      out.flags.stabilized = cmd == "poincare";
      out.value = series_value(std::move(s), key);
    } else if (cmd == "autozeta") {
      auto s = auto_igusa_weightless_truncated(system_arg(args[0], name(0)), options.truncation);
      out.payload = series_payload(s, recognize_rational(s));
      out.value = series_value(std::move(s), key);
    } else if (cmd == "sigma") {
      const auto& a = args[0];
      if (a.kind == Value::Kind::Class) {
        auto c = sigma_reduce(*a.cls);
        out.payload = class_payload(c);
        out.value = class_value(std::move(c), key);
      } else if (a.kind == Value::Kind::Series) {
        auto s = sigma_series(*a.series);
        out.payload = series_payload(s, recognize_rational(s));
        out.value = series_value(std::move(s), key);
      } else {
        throw Error(ErrorCode::InvalidArgument,
                    "'" + name(0) + "' is " + kind_name(a.kind) + ", expected a class or a series");
      }
    } else if (cmd == "classof") {
      auto c = args.size() == 1 ? class_of_scheme(scheme_of(args[0], name(0)))
                                : cone_class(scheme_of(args[0], name(0)), scheme_of(args[1], name(1)));
      out.payload = class_payload(c);
      out.value = class_value(std::move(c), key);
    } else {
      throw Error(ErrorCode::InvalidArgument, "unknown command '" + cmd + "'");
    }
    return out;
  }
};

Session::Session(Script script, ShellOptions options, WarningSink warn)
    : impl_(std::make_unique<Impl>(std::move(script), std::move(options), std::move(warn))) {}

Session::~Session() = default;

const Script& Session::script() const noexcept { return impl_->script; }

const ResultRecord& Session::execute(const std::string& handle) {
  const auto& st = impl_->statement(handle);
  if (st.kind != StatementKind::Command) {
    throw Error(ErrorCode::InvalidArgument, "'" + handle + "' is a declaration, not a command");
  }
  return impl_->run(st);
}

std::vector<ResultRecord> Session::execute_all() {
  std::vector<ResultRecord> out;
  for (const auto& st : impl_->script.statements) {
    if (st.kind == StatementKind::Command) out.push_back(impl_->run(st));
  }
  return out;
}

namespace {

void text_class(std::ostringstream& os, const Json& p, const std::string& indent) {
  os << indent << p.at("text").get<std::string>() << "  (dim " << p.at("dim").dump() << ")\n";
}

std::string plain(const Json& j) { return j.is_string() ? j.get<std::string>() : j.dump(); }

}  // namespace

std::string render_text(const ResultRecord& r) {
  std::ostringstream os;
  os << "line " << r.line << ": " << r.command << "\n";
  const auto& p = r.payload;
  const auto kind = p.value("kind", "");
  if (kind == "presentation") {
    std::vector<std::string> vars = p.at("variables");
    os << "  ring " << p.at("ring").get<std::string>() << "[";
    for (std::size_t i = 0; i < vars.size(); ++i) os << (i ? ", " : "") << vars[i];
    os << "]\n  generators:";
    if (p.at("generators").empty()) os << " (none)";
    os << "\n";
    for (const auto& g : p.at("generators")) os << "    " << g.get<std::string>() << "\n";
    if (p.contains("certificate")) os << "  certificate: " << p["certificate"].get<std::string>() << "\n";
    if (p.contains("polynomial_ring_in") && !p["polynomial_ring_in"].is_null()) {
      os << "  polynomial ring in " << p["polynomial_ring_in"].dump() << " coordinates\n";
    }
    if (p.contains("level")) {
      os << "  level " << p["level"].dump() << ", probe depth " << p["probe_depth"].dump() << "\n";
    }
  } else if (kind == "class") {
    text_class(os, p, "  ");
    if (p.contains("measure")) {
      os << "  " << p["measure"].get<std::string>() << " measure at level " << p["level"].dump() << " (length "
         << p["length"].dump() << ")\n";
    }
  } else if (kind == "series") {
    os << "  " << p.at("series").get<std::string>() << " over " << p.at("system").get<std::string>() << "\n";
    const auto& coeffs = p.at("coefficients");
    for (std::size_t n = 0; n < coeffs.size(); ++n) {
      os << "  t^" << n + 1 << ": " << coeffs[n].at("text").get<std::string>() << "\n";
    }
    const auto& form = p.at("closed_form");
    os << "  closed form: " << (form.is_null() ? std::string("none found") : form.at("text").get<std::string>())
       << "\n";
  } else if (kind == "verdict") {
    os << "  verdict: " << p.at("verdict").get<std::string>();
    if (!p.at("affine_dim").is_null()) os << ", affine dim " << p["affine_dim"].dump();
    os << "\n  detail: " << p.at("detail").get<std::string>() << "\n";
  } else if (kind == "probe") {
    os << "  levels " << p.at("levels").dump() << "\n  lengths " << p.at("lengths").dump() << "\n  dims "
       << p.at("dims").dump() << "\n  defects " << p.at("defects").dump() << "\n  evidence "
       << p.at("evidence").dump() << "\n";
  } else {
    os << "  " << plain(p.at("value")) << "\n";
  }
  os << "  certified: " << (r.flags.certified ? "yes" : "no") << ", stabilized: " << (r.flags.stabilized ? "yes" : "no")
     << ", cache: " << (r.flags.cache_hit ? "hit" : "miss") << ", " << r.timing_ms << " ms\n";
  return os.str();
}

std::string render_json(const ResultRecord& record) { return record.to_json().dump(); }

}  // namespace nabla
