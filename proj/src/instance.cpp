#include "adelic/instance.hpp"

#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "adelic/cover.hpp"
#include "adelic/errors.hpp"
#include "adelic/parse.hpp"

namespace adelic {

using nlohmann::json;

namespace {

std::string trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

// Split at `sep` outside parentheses.
std::vector<std::string> split_top(std::string_view s, const std::string& seps) {
  std::vector<std::string> out;
  int depth = 0;
  std::string cur;
  for (char c : s) {
    if (c == '(') ++depth;
    if (c == ')') --depth;
    if (depth < 0) throw ParseError("unbalanced ')'");
    if (depth == 0 && seps.find(c) != std::string::npos) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (depth != 0) throw ParseError("unbalanced '('");
  out.push_back(cur);
  return out;
}

std::string strip_comments(std::string_view text) {
  std::string out;
  bool comment = false;
  for (char c : text) {
    if (c == '#') comment = true;
    if (c == '\n') comment = false;
    if (!comment) out += c;
  }
  return out;
}

std::vector<std::string> list_of(const std::string& v) {
  std::vector<std::string> out;
  for (const auto& item : split_top(v, ",")) {
    const std::string t = trim(item);
    if (t.empty()) throw ParseError("empty entry in list '" + v + "'");
    out.push_back(t);
  }
  return out;
}

std::int64_t parse_int(const std::string& key, const std::string& v) {
  try {
    std::size_t used = 0;
    const long long n = std::stoll(v, &used);
    if (used != v.size()) throw std::invalid_argument(v);
    return n;
  } catch (const std::exception&) {
    throw ParseError(key + " must be an integer, got '" + v + "'");
  }
}

}  // namespace

Instance parse_instance(std::string_view text) {
  Instance inst;
  std::set<std::string> seen;
  for (const auto& raw : split_top(strip_comments(text), ";\n")) {
    const std::string stmt = trim(raw);
    if (stmt.empty()) continue;
    std::string key, value;
    if (stmt.rfind("field", 0) == 0 && stmt.size() > 5 && (stmt[5] == ' ' || stmt[5] == ':')) {
      key = "field";
      value = trim(stmt.substr(stmt[5] == ':' ? 6 : 5));
      if (!value.empty() && value[0] == ':') value = trim(value.substr(1));
    } else {
      const auto colon = stmt.find(':');
      if (colon == std::string::npos) throw ParseError("expected 'key: value', got '" + stmt + "'");
      key = trim(stmt.substr(0, colon));
      value = trim(stmt.substr(colon + 1));
    }
    if (value.empty()) throw ParseError("empty value for '" + key + "'");
    if (key.rfind("route", 0) == 0) {
      const std::string place = trim(key.substr(5));
      if (place.empty() || place[0] != '@') throw ParseError("route needs a place: 'route @a: j1 -> fiber1, ...'");
      for (const auto& [p, r] : inst.routes)
        if (p == place) throw ParseError("second route at " + place);
      inst.routes.emplace_back(place, value);
      continue;
    }
    if (!seen.insert(key).second) throw ParseError("repeated key '" + key + "'");
    if (key == "field") inst.field = value;
    else if (key == "poly") inst.poly = value;
    else if (key == "element") inst.element = value;
    else if (key == "place") inst.place = value;
    else if (key == "cover") inst.cover = value;
    else if (key == "target") inst.target = value;
    else if (key == "image") inst.image = value;
    else if (key == "witness") inst.witness = value;
    else if (key == "tests") inst.tests = list_of(value);
    else if (key == "window") inst.window = list_of(value);
    else if (key == "precision") inst.precision = parse_int(key, value);
    else if (key == "bound") inst.bound = static_cast<int>(parse_int(key, value));
    else throw ParseError("unknown key '" + key + "'");
  }
  const bool cover_keys = inst.cover || inst.target || inst.image || inst.witness || !inst.routes.empty() ||
                          !inst.tests.empty();
  const bool poly_keys = inst.poly || inst.element || inst.place || !inst.window.empty();
  if (cover_keys && poly_keys) throw ParseError("an instance declares either a polynomial or a cover, not both");
  if ((inst.target || inst.image || inst.witness || !inst.routes.empty() || !inst.tests.empty()) && !inst.cover)
    throw ParseError("cover keys given without 'cover:'");
  if ((inst.element || inst.place || !inst.window.empty()) && !inst.poly)
    throw ParseError("'element', 'place' and 'window' need 'poly:'");
  if (inst.precision && *inst.precision < 1) throw ParseError("precision must be positive");
  if (inst.bound && *inst.bound < 0) throw ParseError("bound must be nonnegative");
  return inst;
}

Instance load_instance(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_instance(ss.str());
}

std::string Instance::echo() const {
  std::string s;
  auto line = [&](const std::string& k, const std::string& v) { s += k + ": " + v + "\n"; };
  auto joined = [](const std::vector<std::string>& v) {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) out += (i ? ", " : "") + v[i];
    return out;
  };
  if (!field.empty()) s += "field " + field + "\n";
  if (poly) line("poly", *poly);
  if (element) line("element", *element);
  if (place) line("place", *place);
  if (!window.empty()) line("window", joined(window));
  if (cover) line("cover", *cover);
  if (target) line("target", *target);
  if (image) line("image", *image);
  for (const auto& [p, r] : routes) line("route " + p, r);
  if (!tests.empty()) line("tests", joined(tests));
  if (witness) line("witness", *witness);
  if (precision) line("precision", std::to_string(*precision));
  if (bound) line("bound", std::to_string(*bound));
  return s;
}

int exit_code_for(const std::exception& e) {
  if (dynamic_cast<const ParseError*>(&e)) return 2;
  if (dynamic_cast<const NeedsLargerField*>(&e) || dynamic_cast<const UnsupportedWildRamification*>(&e) ||
      dynamic_cast<const WildOrInseparableResidue*>(&e))
    return 3;
  if (dynamic_cast<const NotAUnit*>(&e)) return 4;
  if (dynamic_cast<const InternalInconsistency*>(&e)) return 6;
  return 1;
}

namespace {

std::string error_kind(const std::exception& e) {
  if (dynamic_cast<const ParseError*>(&e)) return "ParseError";
  if (dynamic_cast<const NeedsLargerField*>(&e)) return "NeedsLargerField";
  if (dynamic_cast<const UnsupportedWildRamification*>(&e)) return "UnsupportedWildRamification";
  if (dynamic_cast<const WildOrInseparableResidue*>(&e)) return "WildOrInseparableResidue";
  if (dynamic_cast<const NotAUnit*>(&e)) return "NotAUnit";
  if (dynamic_cast<const InternalInconsistency*>(&e)) return "InternalInconsistency";
  if (dynamic_cast<const PrecisionExhausted*>(&e)) return "PrecisionExhausted";
  if (dynamic_cast<const RoutingAmbiguous*>(&e)) return "RoutingAmbiguous";
  if (dynamic_cast<const CutoffTooNarrow*>(&e)) return "CutoffTooNarrow";
  if (dynamic_cast<const WitnessNotFound*>(&e)) return "WitnessNotFound";
  if (dynamic_cast<const PreconditionViolation*>(&e)) return "PreconditionViolation";
  if (dynamic_cast<const ZeroInput*>(&e)) return "ZeroInput";
  if (dynamic_cast<const FieldMismatch*>(&e)) return "FieldMismatch";
  return "Error";
}

}  // namespace

Report error_report(const std::exception& e) {
  Report r;
  r.exit_code = exit_code_for(e);
  r.json = {{"error", error_kind(e)}, {"message", e.what()}};
  if (const auto* n = dynamic_cast<const NeedsLargerField*>(&e)) r.json["factor"] = n->factor();
  r.text = "error (" + error_kind(e) + "): " + e.what() + "\n";
  return r;
}

namespace {

constexpr std::int64_t kDefaultBound = 3;

struct Setup {
  const Field* k;
  std::int64_t precision;
  int bound;
};

Setup setup(const Instance& inst, const RunOptions& opt) {
  const std::string name = opt.field ? *opt.field : inst.field;
  if (name.empty()) throw ParseError("no field declared (use 'field F_p' or --field)");
  Setup s{&Field::parse(name), opt.precision ? *opt.precision : inst.precision.value_or(kDefaultPrecision),
          static_cast<int>(opt.bound ? *opt.bound : inst.bound.value_or(kDefaultBound))};
  if (s.precision < 1) throw ParseError("precision must be positive");
  return s;
}

const std::string& require(const std::optional<std::string>& v, const std::string& key) {
  if (!v) throw ParseError("this command needs '" + key + ":' in the instance");
  return *v;
}

std::string echo_with(const Instance& inst, const RunOptions& opt) {
  Instance e = inst;
  if (opt.field) e.field = *opt.field;
  if (opt.precision) e.precision = opt.precision;
  if (opt.bound) e.bound = opt.bound;
  if (opt.place) e.place = opt.place;
  return e.echo();
}

json places_json(const std::vector<Place>& ps) {
  json a = json::array();
  for (const auto& x : ps) a.push_back(x.to_string());
  return a;
}

json content_json(const ContentReport& r) {
  json b = json::array();
  for (const auto& e : r.breakdown) b.push_back({{"place", e.x.to_string()}, {"j", e.j}, {"e", e.e}, {"val", e.val}});
  return {{"total", r.total}, {"breakdown", b}};
}

std::string breakdown_text(const ContentReport& r) {
  std::string s;
  for (const auto& e : r.breakdown)
    s += "  (" + e.x.to_string() + ", j=" + std::to_string(e.j) + ", e=" + std::to_string(e.e) +
         ")  v=" + std::to_string(e.val) + "\n";
  return s;
}

std::string join(const std::vector<std::string>& v, const std::string& sep) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? sep : "") + v[i];
  return out;
}

std::vector<std::string> place_names(const std::vector<Place>& ps) {
  std::vector<std::string> out;
  for (const auto& x : ps) out.push_back(x.to_string());
  return out;
}

}  // namespace

Report run_separable(const Instance& inst, const RunOptions& opt) {
  const Setup s = setup(inst, opt);
  const AdelicPoly p = parse_adelic_poly(require(inst.poly, "poly"), *s.k);
  const SeparabilityResult r = is_separable(p);
  Report rep;
  json j{{"command", "separable"}, {"instance", echo_with(inst, opt)}, {"poly", p.to_string()},
         {"separable", r.separable}};
  std::ostringstream t;
  t << "p(T) = " << p.to_string() << " over " << s.k->name() << "\n";
  if (r.separable) {
    j["certificate"] = {{"a", to_string(r.a)}, {"b", to_string(r.b)}, {"verified", r.verified}};
    t << "separable: yes\n  a = " << to_string(r.a) << "\n  b = " << to_string(r.b)
      << "\n  a*p + b*p' = 1 verified exactly\n";
  } else {
    j["certificate"] = nullptr;
    j["witness"] = r.witness ? json(r.witness->to_string()) : json(nullptr);
    t << "separable: no";
    if (r.witness) t << " (p_x is inseparable at " << r.witness->to_string() << ")";
    t << "\n";
  }
  // The bad set is finite only when the generic part is separable.
  std::vector<Place> candidates;
  try {
    candidates = bad_set_candidates(p);
  } catch (const PreconditionViolation&) {
    j["bad_set"] = nullptr;
    j["classification"] = json::array();
    t << "bad set: infinite (generic part inseparable)\n";
    rep.json = j;
    rep.text = t.str();
    return rep;
  }
  json cls = json::array();
  std::vector<Place> bad;
  for (const Place& x : candidates) {
    const PlaceClass c = classify_place(p, x);
    cls.push_back({{"place", x.to_string()}, {"class", to_string(c)}});
    if (c != PlaceClass::IntegralSeparable) bad.push_back(x);
  }
  j["bad_set"] = places_json(bad);
  j["classification"] = cls;
  t << "bad set: {" << join(place_names(bad), ", ") << "}\n";
  for (const auto& c : cls) t << "  " << c["place"].get<std::string>() << "  " << c["class"].get<std::string>() << "\n";
  rep.json = j;
  rep.text = t.str();
  return rep;
}

Report run_decompose(const Instance& inst, const RunOptions& opt) {
  const Setup s = setup(inst, opt);
  const AdelicPoly p = parse_adelic_poly(require(inst.poly, "poly"), *s.k);
  const std::string place_text = opt.place ? *opt.place : require(inst.place, "place");
  const Place x = parse_place(place_text, *s.k);
  const LocalDecomposition d = decompose_at(p, x, s.precision);
  json fs = json::array();
  std::ostringstream t;
  t << "p_x(T) at " << x.to_string() << ": " << to_string(PlaceClass(d.cls)) << ", " << d.factor_count()
    << " factor(s), precision " << s.precision << "\n";
  for (const auto& f : d.factors) {
    fs.push_back({{"j", f.label}, {"e", f.e}, {"root", f.root.to_string("s")}});
    t << "  " << f.to_string(x.to_string()) << "\n";
  }
  Report rep;
  rep.json = {{"command", "decompose"}, {"instance", echo_with(inst, opt)}, {"place", x.to_string()},
              {"class", to_string(d.cls)}, {"precision", s.precision}, {"factors", fs}};
  rep.text = t.str();
  return rep;
}

Report run_content(const Instance& inst, const RunOptions& opt) {
  const Setup s = setup(inst, opt);
  const AdelicPoly p = parse_adelic_poly(require(inst.poly, "poly"), *s.k);
  const AlgebraElement a = parse_element(require(inst.element, "element"), p);
  if (!alg_is_unit(a, p))
    throw NotAUnit("element " + a.to_string() + " is not a unit: its norm " + alg_norm(a, p).to_string() +
                   " is not an idele");
  const ContentReport val = content_valuation(a, p, s.precision);
  std::vector<Place> window;
  if (!inst.window.empty()) {
    for (const auto& w : inst.window) window.push_back(parse_place(w, *s.k));
  } else {
    for (const auto& e : val.breakdown)
      if (window.empty() || window.back() != e.x) window.push_back(e.x);
  }
  const IndexReport idx = content_index(a, p, window, s.precision);
  if (idx.total != val.total)
    throw InternalInconsistency("index content " + std::to_string(idx.total) + " differs from valuation content " +
                                std::to_string(val.total));
  json per = json::array();
  for (const auto& [x, v] : idx.per_place) per.push_back({{"place", x.to_string()}, {"index", v}});
  Report rep;
  rep.json = {{"command", "content"},
              {"instance", echo_with(inst, opt)},
              {"element", a.to_string()},
              {"unit", true},
              {"valuation", content_json(val)},
              {"index", {{"total", idx.total}, {"window", places_json(window)}, {"widenings", idx.widenings},
                         {"per_place", per}}},
              {"agree", true}};
  std::ostringstream t;
  t << "content(" << a.to_string() << ") = " << val.total << "\n" << breakdown_text(val);
  t << "index over {" << join(place_names(window), ", ") << "} = " << idx.total << " (agrees)\n";
  rep.text = t.str();
  return rep;
}

namespace {

std::map<Place, std::vector<int>> parse_routes(const Instance& inst, const Field& k) {
  std::map<Place, std::vector<int>> out;
  for (const auto& [place, text] : inst.routes) {
    const Place x = parse_place(place, k);
    std::map<int, int> slots;
    for (const auto& item : list_of(text)) {
      const auto arrow = item.find("->");
      if (arrow == std::string::npos) throw ParseError("route entry must look like 'j1 -> fiber2': " + item);
      const std::string lhs = trim(item.substr(0, arrow)), rhs = trim(item.substr(arrow + 2));
      if (lhs.size() < 2 || lhs[0] != 'j' || rhs.rfind("fiber", 0) != 0)
        throw ParseError("route entry must look like 'j1 -> fiber2': " + item);
      const int j = static_cast<int>(parse_int("slot", lhs.substr(1)));
      const int f = static_cast<int>(parse_int("fiber", rhs.substr(5)));
      if (!slots.emplace(j, f).second) throw ParseError("slot j" + std::to_string(j) + " routed twice");
    }
    std::vector<int> v;
    for (const auto& [j, f] : slots) {
      if (j != static_cast<int>(v.size()) + 1) throw ParseError("route at " + place + " must list slots j1, j2, ...");
      v.push_back(f);
    }
    out[x] = v;
  }
  return out;
}

json placey_json(const PlaceY& y) { return {{"place", y.x.to_string()}, {"fiber", y.label()}, {"e", y.e()}}; }

}  // namespace

Report run_verify_cover(const Instance& inst, const RunOptions& opt) {
  const Setup s = setup(inst, opt);
  const CoverSpec cover = CoverSpec::make(parse_sigma_poly(require(inst.cover, "cover"), *s.k, "U"));
  Embedding emb;
  {
    const AdelicPoly p = inst.target ? parse_adelic_poly(*inst.target, *s.k) : AdelicPoly::global(cover.poly());
    AlgebraElement image = inst.image ? parse_element(*inst.image, p) : parse_element("T", p);
    emb = make_routed_embedding(cover, p, image, parse_routes(inst, *s.k), s.precision);
  }
  std::vector<OmegaElem> tests;
  for (const auto& f : inst.tests) tests.push_back(parse_omega(f, cover));
  if (tests.empty()) tests = default_tests(emb);
  const Verdict v = classify_embedding(emb, tests, s.bound);

  json contents = json::array();
  std::ostringstream t;
  t << "cover: " << to_string(cover.poly(), "w") << " (irreducible: " << cover.certificate() << ")\n";
  t << "target: " << emb.p.to_string() << "\n";
  for (const auto& [f, c] : v.contents.results) {
    json cj = content_json(c);
    cj["f"] = f.to_string();
    contents.push_back(cj);
    t << "  content(" << f.to_string() << ") = " << c.total << "\n";
  }
  t << "product formula on tests: " << (v.contents.pass ? "PASS" : "FAIL") << "\n";
  json missed = json::array();
  for (const auto& y : v.missed) missed.push_back(placey_json(y));
  json j{{"command", "verify-cover"},
         {"instance", echo_with(inst, opt)},
         {"verdict", v.discrete ? "Discrete" : "NonDiscrete"},
         {"d", v.d},
         {"n", v.n},
         {"degree_bound_ok", v.degree_bound_ok},
         {"certificate", cover.certificate()},
         {"missed", missed},
         {"witness", v.witness ? json(v.witness->to_string()) : json(nullptr)},
         {"witness_content", v.witness ? json(v.witness_content) : json(nullptr)},
         {"product_formula", v.contents.pass ? "PASS" : "FAIL"},
         {"contents", contents}};
  if (v.discrete) {
    t << "verdict: Discrete (d = " << v.d << " <= n = " << v.n << ")\n";
  } else {
    std::vector<std::string> ms;
    for (const auto& y : v.missed) ms.push_back(y.to_string());
    t << "verdict: NonDiscrete, missed " << join(ms, ", ") << "\n";
    t << "witness: " << v.witness->to_string() << " with content " << v.witness_content << "\n";
  }
  if (inst.witness) {
    const OmegaElem w = parse_omega(*inst.witness, cover);
    const std::int64_t c = content_of_function(emb, w).total;
    // Poles of a valid witness lie only on missed points.
    std::set<Place> places;
    for (const Place& x : cover.special_places()) places.insert(x);
    for (const auto& y : v.missed) places.insert(y.x);
    for (const RatFn& ci : w.c)
      if (!ci.is_zero())
        for (const Place& x : ratfn_poles(ci)) places.insert(x);
    bool poles_ok = true, has_pole = false;
    for (const auto& [y, val] : omega_divisor(w, cover, {places.begin(), places.end()}, s.precision)) {
      if (val >= 0) continue;
      has_pole = true;
      if (std::find(v.missed.begin(), v.missed.end(), y) == v.missed.end()) poles_ok = false;
    }
    const bool valid = !v.discrete && poles_ok && has_pole && c > 0;
    j["shipped_witness"] = {{"f", w.to_string()}, {"content", c}, {"valid", valid}};
    t << "shipped witness " << w.to_string() << ": content " << c << (valid ? ", valid" : ", NOT valid") << "\n";
  }
  Report rep;
  rep.json = j;
  rep.text = t.str();
  rep.exit_code = v.discrete ? 0 : 5;
  return rep;
}

}  // namespace adelic
