#include "frobdyn/instance.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "fp_poly.hpp"
#include "frobdyn/lifting.hpp"

namespace frobdyn {

using json = nlohmann::ordered_json;

namespace {

[[noreturn]] void fail(const std::string& msg) { throw Error(ErrorKind::ParseError, msg); }

const json& require(const json& j, const char* key, const std::string& where) {
  if (!j.is_object() || !j.contains(key)) fail(where + ": missing \"" + key + "\"");
  return j.at(key);
}

int get_int(const json& j, const std::string& what) {
  if (!j.is_number_integer()) fail(what + " must be an integer");
  return j.get<int>();
}

std::string get_text(const json& j, const std::string& what) {
  if (j.is_string()) return j.get<std::string>();
  if (j.is_number_integer()) return std::to_string(j.get<long long>());
  fail(what + " must be a string");
}

json parse_json(std::string_view text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    std::size_t line = 1;
    for (std::size_t i = 0; i < std::min<std::size_t>(e.byte, text.size()); ++i) line += text[i] == '\n';
    fail("line " + std::to_string(line) + ": " + e.what());
  }
}

FieldPtr parse_field(const json& j) {
  const std::uint32_t p = static_cast<std::uint32_t>(get_int(require(j, "p", "field"), "field.p"));
  if (j.contains("modulus")) {
    std::vector<std::uint32_t> mod;
    for (const auto& c : j.at("modulus")) mod.push_back(static_cast<std::uint32_t>(get_int(c, "modulus coefficient")));
    const int m = j.contains("m") ? get_int(j.at("m"), "field.m") : static_cast<int>(mod.size()) - 1;
    return make_field(p, m, std::move(mod));
  }
  const int m = j.contains("m") ? get_int(j.at("m"), "field.m") : 1;
  if (!fp::is_prime(p)) throw Error(ErrorKind::NonPrimeP, std::to_string(p) + " is not prime");
  return standard_field(p, m);
}

json field_json(const FieldPtr& k) {
  json j;
  j["p"] = k->p();
  j["m"] = k->m();
  j["modulus"] = k->modulus();
  return j;
}

TruncSeries parse_coeff(const FieldPtr& k, const json& j, int default_prec, const std::string& what) {
  return parse_series(k, get_text(j, what), default_prec);
}

void add_terms(HomogPoly& h, const FieldPtr& k, const json& terms, const std::string& what) {
  for (const auto& t : terms) {
    Exponents e;
    for (const auto& x : require(t, "exponents", what)) e.push_back(get_int(x, what + " exponent"));
    h.add_term(e, parse_coeff(k, require(t, "coeff", what), kExactPrecision, what + " coefficient"));
  }
}

int infer_degree(const json& terms, int fallback) {
  for (const auto& t : terms) {
    if (!t.is_object() || !t.contains("exponents")) continue;
    int d = 0;
    for (const auto& x : t.at("exponents")) d += x.is_number_integer() ? x.get<int>() : 0;
    return d;
  }
  return fallback;
}

// A polynomial: {"degree", "terms"}, a single term object, a term array, or "0".
HomogPoly parse_poly(const FieldPtr& k, int nvars, const json& j, int default_degree, const std::string& what) {
  json terms = json::array();
  std::optional<int> degree;
  if (j.is_string() || j.is_number_integer()) {
    if (get_text(j, what) != "0") fail(what + ": polynomials are objects with \"terms\"");
  } else if (j.is_array()) {
    terms = j;
  } else if (j.is_object() && j.contains("terms")) {
    terms = j.at("terms");
    if (j.contains("degree")) degree = get_int(j.at("degree"), what + ".degree");
  } else if (j.is_object() && j.contains("exponents")) {
    terms.push_back(j);
  } else {
    fail(what + ": unrecognized polynomial");
  }
  HomogPoly h(k, nvars, degree.value_or(infer_degree(terms, default_degree)));
  add_terms(h, k, terms, what);
  return h;
}

json poly_json(const HomogPoly& h) {
  json j;
  j["degree"] = h.degree();
  json terms = json::array();
  for (auto it = h.terms().rbegin(); it != h.terms().rend(); ++it) {
    json t;
    t["exponents"] = it->first;
    t["coeff"] = coefficient_string(it->second);
    terms.push_back(std::move(t));
  }
  j["terms"] = std::move(terms);
  return j;
}

std::vector<FqElem> parse_residue_json(const FieldPtr& k, const json& j, const std::string& what) {
  if (!j.is_array()) fail(what + " must be an array of field elements");
  std::vector<FqElem> out;
  for (const auto& c : j) out.push_back(parse_element(k, get_text(c, what)));
  return out;
}

json residue_json(const std::vector<FqElem>& r) {
  json j = json::array();
  for (const auto& c : r) j.push_back(to_string(c));
  return j;
}

DmlMap parse_dml(const FieldPtr& k, const json& j) {
  DmlMap f;
  f.N = get_int(require(j, "N", "map"), "N");
  f.p = static_cast<std::uint32_t>(get_int(require(j, "p", "map"), "p"));
  f.e = get_int(require(j, "e", "map"), "e");
  if (f.N < 0 || f.e < 1 || f.e > 30) fail("N must be >= 0 and e in [1, 30]");
  if (f.p != k->p()) fail("map p = " + std::to_string(f.p) + " differs from the field characteristic");
  const int n = f.N + 1;
  const json& A = require(j, "A", "map");
  if (!A.is_array() || static_cast<int>(A.size()) != n) fail("A must have " + std::to_string(n) + " rows");
  f.A = Matrix<TruncSeries>(n, n, TruncSeries(k, kExactPrecision));
  for (int r = 0; r < n; ++r) {
    if (!A[r].is_array() || static_cast<int>(A[r].size()) != n) fail("A row " + std::to_string(r) + " has the wrong length");
    for (int c = 0; c < n; ++c) f.A(r, c) = parse_coeff(k, A[r][c], kExactPrecision, "A entry");
  }
  const json& G = require(j, "G", "map");
  if (!G.is_array() || static_cast<int>(G.size()) != n) fail("G must have " + std::to_string(n) + " entries");
  std::int64_t qp = 1;
  for (int i = 1; i < f.e; ++i) qp *= f.p;
  for (int i = 0; i < n; ++i) f.G.push_back(parse_poly(k, n, G[i], static_cast<int>(qp), "G" + std::to_string(i)));
  if (j.contains("label")) f.label = get_text(j.at("label"), "label");
  return f;
}

GeneralMap parse_general(const FieldPtr& k, const json& j) {
  GeneralMap g;
  g.N = get_int(require(j, "N", "map"), "N");
  if (g.N < 0) fail("N must be >= 0");
  const json& coords = require(j, "coordinates", "map");
  if (!coords.is_array() || static_cast<int>(coords.size()) != g.N + 1) {
    fail("coordinates must have " + std::to_string(g.N + 1) + " entries");
  }
  for (std::size_t i = 0; i < coords.size(); ++i) {
    g.coords.push_back(parse_poly(k, g.N + 1, coords[i], 1, "coordinate " + std::to_string(i)));
  }
  for (const auto& h : g.coords) {
    if (h.degree() != g.coords.front().degree()) fail("coordinates of a general map must share one degree");
  }
  if (j.contains("label")) g.label = get_text(j.at("label"), "label");
  return g;
}

Parameters parse_params(const json& j) {
  Parameters P;
  if (j.is_null()) return P;
  if (j.contains("prec")) P.prec = get_int(j.at("prec"), "prec");
  if (j.contains("horizon")) P.horizon = get_int(j.at("horizon"), "horizon");
  if (j.contains("threshold")) P.threshold = get_int(j.at("threshold"), "threshold");
  if (j.contains("max_period")) P.max_period = get_int(j.at("max_period"), "max_period");
  if (j.contains("r_max")) P.r_max = get_int(j.at("r_max"), "r_max");
  if (P.prec < 1 || P.horizon < 0 || P.max_period < 1 || P.r_max < 1 || (P.threshold && *P.threshold < 1)) {
    fail("parameters must be positive");
  }
  return P;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

const DmlMap& Instance::dml() const {
  if (const auto* f = std::get_if<DmlMap>(&map)) return *f;
  throw Error(ErrorKind::InvalidArgument, "this command needs a map of the form sum A x^q + G(x^p)");
}

Instance parse_instance_text(std::string_view text, bool validate) {
  const json j = parse_json(text);
  if (!j.is_object()) fail("instance must be a JSON object");
  Instance I;
  I.field = parse_field(require(j, "field", "instance"));
  if (j.contains("label")) I.label = get_text(j.at("label"), "label");
  const std::string kind = j.contains("kind") ? get_text(j.at("kind"), "kind") : "dml";
  if (kind == "dml") {
    DmlMap f = parse_dml(I.field, j);
    if (f.label.empty()) f.label = I.label;
    I.map = validate ? checked_map(std::move(f)) : std::move(f);
  } else if (kind == "general") {
    GeneralMap g = parse_general(I.field, j);
    if (g.label.empty()) g.label = I.label;
    I.map = std::move(g);
  } else {
    fail("unknown map kind \"" + kind + "\"");
  }
  I.params = parse_params(j.contains("parameters") ? j.at("parameters") : json());
  if (j.contains("residue_points")) {
    for (const auto& [name, v] : j.at("residue_points").items()) {
      I.residue_points.emplace(name, parse_residue_json(I.field, v, "residue point " + name));
    }
  }
  const int n = std::holds_alternative<DmlMap>(I.map) ? std::get<DmlMap>(I.map).N + 1 : std::get<GeneralMap>(I.map).N + 1;
  if (j.contains("points")) {
    for (const auto& [name, v] : j.at("points").items()) {
      if (v.is_array()) {
        std::vector<TruncSeries> coords;
        for (const auto& c : v) coords.push_back(parse_coeff(I.field, c, I.params.prec, "point " + name));
        if (static_cast<int>(coords.size()) != n) fail("point " + name + " has the wrong number of coordinates");
        I.points.emplace(name, normalize(std::move(coords)));
      } else if (v.is_object() && v.contains("lift_of")) {
        LiftOf L;
        L.residue = parse_residue_json(I.field, v.at("lift_of"), "point " + name);
        if (static_cast<int>(L.residue.size()) != n) fail("point " + name + " has the wrong number of coordinates");
        if (v.contains("sigma")) L.sigma = get_int(v.at("sigma"), "sigma");
        if (v.contains("prec")) L.prec = get_int(v.at("prec"), "prec");
        I.points.emplace(name, std::move(L));
      } else {
        fail("point " + name + ": expected a coordinate array or {\"lift_of\": ...}");
      }
    }
  }
  if (j.contains("varieties")) {
    for (const auto& [name, v] : j.at("varieties").items()) {
      if (v.is_object() && v.contains("generators")) {
        std::vector<HomogPoly> gens;
        for (const auto& g : v.at("generators")) gens.push_back(parse_poly(I.field, n, g, 1, "variety " + name));
        I.varieties.emplace(name, make_subvariety(std::move(gens)));
      } else if (v.is_object() && v.contains("point")) {
        PointLocus L{get_text(v.at("point"), "point name"), v.contains("sigma") ? get_int(v.at("sigma"), "sigma") : 0};
        if (!I.points.contains(L.point)) fail("variety " + name + " refers to unknown point " + L.point);
        I.varieties.emplace(name, std::move(L));
      } else {
        fail("variety " + name + ": expected {\"generators\": ...} or {\"point\": ...}");
      }
    }
  }
  return I;
}

Instance parse_instance(const std::filesystem::path& path, bool validate) {
  return parse_instance_text(read_file(path), validate);
}

std::string print_instance(const Instance& I) {
  json j;
  if (!I.label.empty()) j["label"] = I.label;
  j["field"] = field_json(I.field);
  if (const auto* f = std::get_if<DmlMap>(&I.map)) {
    j["kind"] = "dml";
    j["p"] = f->p;
    j["e"] = f->e;
    j["N"] = f->N;
    json A = json::array();
    for (std::size_t r = 0; r < f->A.rows(); ++r) {
      json row = json::array();
      for (std::size_t c = 0; c < f->A.cols(); ++c) row.push_back(coefficient_string(f->A(r, c)));
      A.push_back(std::move(row));
    }
    j["A"] = std::move(A);
    json G = json::array();
    for (const auto& g : f->G) G.push_back(poly_json(g));
    j["G"] = std::move(G);
  } else {
    const auto& g = std::get<GeneralMap>(I.map);
    j["kind"] = "general";
    j["N"] = g.N;
    json coords = json::array();
    for (const auto& h : g.coords) coords.push_back(poly_json(h));
    j["coordinates"] = std::move(coords);
  }
  if (!I.points.empty()) {
    json pts = json::object();
    for (const auto& [name, entry] : I.points) {
      if (const auto* P = std::get_if<ProjPoint>(&entry)) {
        json arr = json::array();
        for (const auto& c : P->coords) arr.push_back(to_string(c));
        pts[name] = std::move(arr);
      } else {
        const auto& L = std::get<LiftOf>(entry);
        json o;
        o["lift_of"] = residue_json(L.residue);
        if (L.sigma != 0) o["sigma"] = L.sigma;
        if (L.prec) o["prec"] = *L.prec;
        pts[name] = std::move(o);
      }
    }
    j["points"] = std::move(pts);
  }
  if (!I.residue_points.empty()) {
    json rp = json::object();
    for (const auto& [name, r] : I.residue_points) rp[name] = residue_json(r);
    j["residue_points"] = std::move(rp);
  }
  if (!I.varieties.empty()) {
    json vs = json::object();
    for (const auto& [name, entry] : I.varieties) {
      json o;
      if (const auto* V = std::get_if<Subvariety>(&entry)) {
        json gens = json::array();
        for (const auto& g : V->generators) gens.push_back(poly_json(g));
        o["generators"] = std::move(gens);
      } else {
        const auto& L = std::get<PointLocus>(entry);
        o["point"] = L.point;
        if (L.sigma != 0) o["sigma"] = L.sigma;
      }
      vs[name] = std::move(o);
    }
    j["varieties"] = std::move(vs);
  }
  json params;
  params["prec"] = I.params.prec;
  params["horizon"] = I.params.horizon;
  if (I.params.threshold) params["threshold"] = *I.params.threshold;
  params["max_period"] = I.params.max_period;
  params["r_max"] = I.params.r_max;
  j["parameters"] = std::move(params);
  return j.dump(2) + "\n";
}

TwistInstance parse_twist_text(std::string_view text) {
  const json j = parse_json(text);
  TwistInstance T;
  T.field = parse_field(require(j, "field", "twist instance"));
  T.q = get_int(require(j, "q", "twist instance"), "q");
  if (j.contains("label")) T.label = get_text(j.at("label"), "label");
  if (j.contains("r_max")) T.r_max = get_int(j.at("r_max"), "r_max");
  const json& A = require(j, "A", "twist instance");
  if (!A.is_array() || A.empty()) fail("A must be a nonempty square matrix");
  const std::size_t n = A.size();
  T.A = Matrix<FqElem>(n, n, FqElem::zero(T.field));
  for (std::size_t r = 0; r < n; ++r) {
    if (!A[r].is_array() || A[r].size() != n) fail("A must be square");
    for (std::size_t c = 0; c < n; ++c) T.A(r, c) = parse_element(T.field, get_text(A[r][c], "A entry"));
  }
  return T;
}

TwistInstance parse_twist(const std::filesystem::path& path) { return parse_twist_text(read_file(path)); }

std::string print_twist(const TwistInstance& T) {
  json j;
  if (!T.label.empty()) j["label"] = T.label;
  j["q"] = T.q;
  j["field"] = field_json(T.field);
  json A = json::array();
  for (std::size_t r = 0; r < T.A.rows(); ++r) {
    json row = json::array();
    for (std::size_t c = 0; c < T.A.cols(); ++c) row.push_back(to_string(T.A(r, c)));
    A.push_back(std::move(row));
  }
  j["A"] = std::move(A);
  j["r_max"] = T.r_max;
  return j.dump(2) + "\n";
}

std::vector<FqElem> parse_residue_point(const FieldPtr& field, std::string_view text) {
  std::string s(text);
  const auto l = s.find_first_not_of(" \t");
  const auto r = s.find_last_not_of(" \t");
  if (l == std::string::npos) fail("empty residue point");
  s = s.substr(l, r - l + 1);
  if (s.front() == '(' || s.front() == '[') {
    if (s.size() < 2 || (s.back() != ')' && s.back() != ']')) fail("unbalanced brackets in residue point");
    s = s.substr(1, s.size() - 2);
  }
  std::vector<FqElem> out;
  std::stringstream ss(s);
  std::string part;
  while (std::getline(ss, part, ',')) out.push_back(parse_element(field, part));
  if (out.empty()) fail("empty residue point");
  return out;
}

ProjPoint resolve_point(const Instance& I, const std::string& name) {
  auto it = I.points.find(name);
  if (it == I.points.end()) throw Error(ErrorKind::InvalidArgument, "unknown point " + name);
  if (const auto* P = std::get_if<ProjPoint>(&it->second)) return *P;
  const auto& L = std::get<LiftOf>(it->second);
  const DmlMap& f = I.dml();
  const SigmaFixedLift lift = sigma_fixed_lift(f, L.residue, L.prec.value_or(I.params.prec));
  if (L.sigma == 0) return lift.lift;
  return galois(lift.lift, GaloisAction{static_cast<std::int64_t>(f.e) * L.sigma});
}

Subvariety resolve_variety(const Instance& I, const std::string& name) {
  auto it = I.varieties.find(name);
  if (it == I.varieties.end()) throw Error(ErrorKind::InvalidArgument, "unknown variety " + name);
  if (const auto* V = std::get_if<Subvariety>(&it->second)) return *V;
  const auto& L = std::get<PointLocus>(it->second);
  ProjPoint c = resolve_point(I, L.point);
  if (L.sigma != 0) c = galois(c, GaloisAction{static_cast<std::int64_t>(I.dml().e) * L.sigma});
  return point_variety(c);
}

}  // namespace frobdyn
