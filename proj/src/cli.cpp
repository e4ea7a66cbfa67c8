#include "frobdyn/cli.hpp"

#include <functional>
#include <random>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "frobdyn/instance.hpp"
#include "frobdyn/lifting.hpp"
#include "frobdyn/returns.hpp"
#include "frobdyn/twist.hpp"

namespace frobdyn {

namespace {

using json = nlohmann::ordered_json;

constexpr const char* kQualification =
    "membership is tested at finite precision and the orbit only up to the horizon; "
    "these results are finite evidence, not a proof of the DML property";

struct Options {
  std::string file;
  std::string map_file;
  std::string format = "text";
  unsigned threads = 1;
  std::uint64_t seed = 20240601;
  std::string point;
  std::string variety;
  std::string point0;
  std::optional<int> prec;
  std::optional<int> horizon;
  std::optional<int> threshold;
  std::optional<int> max_period;
  std::optional<int> r_max;
  int times = 2;
  std::optional<std::int64_t> recognize;
  int n = 1;
  int samples = 8;
};

// Exit code for a library error.
int exit_code(ErrorKind k) {
  switch (k) {
    case ErrorKind::ParseError:
    case ErrorKind::ValidationFailure:
    case ErrorKind::InvalidArgument:
    case ErrorKind::NonPrimeP:
    case ErrorKind::ReducibleModulus:
    case ErrorKind::DegreeMismatch:
    case ErrorKind::DimensionMismatch:
    case ErrorKind::FieldMismatch:
    case ErrorKind::NonCanonicalBasePoint:
      return 2;
    case ErrorKind::SearchExhausted:
    case ErrorKind::DegreeOverflow:
      return 3;
    default:
      return 1;
  }
}

std::string field_name(const FieldPtr& k) {
  std::ostringstream os;
  const auto order = k->order();
  os << "F_" << (order ? std::to_string(*order) : std::to_string(k->p()) + "^" + std::to_string(k->m()));
  if (k->m() > 1) {
    os << " = F_" << k->p() << "[a]/(";
    bool first = true;
    for (int j = k->m(); j >= 0; --j) {
      const auto c = k->modulus()[j];
      if (c == 0) continue;
      if (!first) os << " + ";
      first = false;
      if (j == 0 || c != 1) os << c;
      if (j > 0) os << (j == 0 || c != 1 ? "*a" : "a");
      if (j > 1) os << '^' << j;
    }
    os << ')';
  }
  return os.str();
}

std::string set_string(const std::vector<int>& v) {
  std::string s = "{";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + std::to_string(v[i]);
  return s + "}";
}

json residue_json(const std::vector<FqElem>& r) {
  json j = json::array();
  for (const auto& c : r) j.push_back(to_string(c));
  return j;
}

json point_json(const ProjPoint& P) {
  json j;
  json coords = json::array();
  for (const auto& c : P.coords) coords.push_back(format_terms(c));
  j["coords"] = std::move(coords);
  j["prec"] = P.prec();
  return j;
}

json matrix_json(const Matrix<FqElem>& M) {
  json j = json::array();
  for (std::size_t r = 0; r < M.rows(); ++r) {
    json row = json::array();
    for (std::size_t c = 0; c < M.cols(); ++c) row.push_back(to_string(M(r, c)));
    j.push_back(std::move(row));
  }
  return j;
}

json dml_json(const DmlMap& f) {
  json j;
  j["N"] = f.N;
  j["p"] = f.p;
  j["q"] = f.q();
  json A = json::array();
  for (std::size_t r = 0; r < f.A.rows(); ++r) {
    json row = json::array();
    for (std::size_t c = 0; c < f.A.cols(); ++c) row.push_back(coefficient_string(f.A(r, c)));
    A.push_back(std::move(row));
  }
  j["A"] = std::move(A);
  json G = json::array();
  for (const auto& g : f.G) G.push_back(to_string(g, 'y'));
  j["G"] = std::move(G);
  return j;
}

json general_json(const GeneralMap& f) {
  json j = json::array();
  for (const auto& h : f.coords) j.push_back(to_string(h));
  return j;
}

json conditions_json(const ConditionReport& r) {
  json j;
  j["zero_differential"] = r.zero_differential;
  j["special_fiber_is_frobenius"] = r.special_fiber_is_frobenius;
  j["frobenius_power"] = r.frobenius_power ? json(*r.frobenius_power) : json(nullptr);
  return j;
}

std::string conditions_text(const ConditionReport& r) {
  std::ostringstream os;
  os << "zero_differential: " << (r.zero_differential ? "true" : "false") << '\n'
     << "special_fiber_is_frobenius: " << (r.special_fiber_is_frobenius ? "true" : "false") << '\n'
     << "frobenius_power: " << (r.frobenius_power ? std::to_string(*r.frobenius_power) : "none") << '\n';
  return os.str();
}

ConditionReport conditions_of(const AnyMap& m) {
  return std::visit([](const auto& f) { return check_conditions(f); }, m);
}

int log_p(std::uint32_t p, std::int64_t q) {
  int e = 0;
  std::int64_t v = 1;
  while (v < q) {
    v *= p;
    ++e;
  }
  if (v != q || e == 0) throw Error(ErrorKind::InvalidArgument, std::to_string(q) + " is not a power of " + std::to_string(p));
  return e;
}

class Runner {
 public:
  Runner(const Options& o, std::ostream& out) : o_(o), out_(out) {}

  int validate() {
    Instance I = parse_instance(o_.file, false);
    if (!I.is_dml()) {
      const ConditionReport r = conditions_of(I.map);
      if (json_out()) {
        json j;
        j["label"] = I.label;
        j["kind"] = "general";
        j["valid"] = true;
        j["conditions"] = conditions_json(r);
        emit(j);
      } else {
        out_ << "general map " << I.label << ": parsed\n" << conditions_text(r);
      }
      return 0;
    }
    const MapValidation v = validate_map(std::get<DmlMap>(I.map));
    if (json_out()) {
      json j;
      j["label"] = I.label;
      j["kind"] = "dml";
      j["valid"] = v.ok();
      json d = json::array();
      for (const auto& x : v.diagnostics) d.push_back(to_string(x));
      j["diagnostics"] = std::move(d);
      if (v.ok()) j["conditions"] = conditions_json(check_conditions(*v.map));
      emit(j);
    } else if (v.ok()) {
      out_ << "map " << I.label << ": valid\n" << conditions_text(check_conditions(*v.map));
    } else {
      out_ << "map " << I.label << ": invalid\n";
      for (const auto& x : v.diagnostics) out_ << "  " << to_string(x) << '\n';
    }
    return v.ok() ? 0 : 2;
  }

  int check() {
    const Instance I = parse_instance(o_.file);
    const ConditionReport r = conditions_of(I.map);
    if (json_out()) {
      json j;
      j["label"] = I.label;
      j["conditions"] = conditions_json(r);
      emit(j);
    } else {
      out_ << "conditions for " << I.label << '\n' << conditions_text(r);
    }
    return 0;
  }

  int orbit_cmd() {
    const Instance I = parse_instance(o_.file);
    const ProjPoint P = resolve_point(I, require_name(o_.point, "--point"));
    const int H = o_.horizon.value_or(I.params.horizon);
    std::vector<ProjPoint> pts;
    if (I.is_dml()) {
      pts = orbit(I.dml(), P, H);
    } else {
      pts.push_back(P);
      for (int n = 0; n < H; ++n) pts.push_back(apply_map(std::get<GeneralMap>(I.map), pts.back()));
    }
    if (json_out()) {
      json j;
      j["point"] = o_.point;
      j["horizon"] = H;
      json arr = json::array();
      for (const auto& Q : pts) arr.push_back(point_json(Q));
      j["orbit"] = std::move(arr);
      emit(j);
    } else {
      out_ << "orbit of " << o_.point << " up to n = " << H << '\n';
      for (std::size_t n = 0; n < pts.size(); ++n) out_ << "f^" << n << " = " << to_string(pts[n]) << '\n';
    }
    return 0;
  }

  int lift_cmd() {
    const Instance I = parse_instance(o_.file);
    const DmlMap& f = I.dml();
    const int prec = o_.prec.value_or(I.params.prec);
    std::vector<std::string> names;
    std::vector<std::vector<FqElem>> bases;
    if (!o_.point0.empty()) {
      names.push_back(o_.point0);
      bases.push_back(parse_residue_point(I.field, o_.point0));
    } else {
      for (const auto& [name, r] : I.residue_points) {
        names.push_back(name);
        bases.push_back(r);
      }
      if (bases.empty()) throw Error(ErrorKind::InvalidArgument, "no --point0 given and the instance has no residue_points");
    }
    const auto lifts = lift_all(f, bases, prec, o_.threads);
    bool all_ok = true;
    json arr = json::array();
    std::ostringstream text;
    for (std::size_t i = 0; i < lifts.size(); ++i) {
      const auto& L = lifts[i];
      const DmlMap g = map_over(f, L.lift.field());
      const bool ok = proj_eq(apply_map(g, L.lift), galois(L.lift, GaloisAction{g.e}));
      all_ok = all_ok && ok;
      if (json_out()) {
        json j;
        j["name"] = names[i];
        j["base"] = residue_json(L.base);
        j["lift"] = point_json(L.lift);
        j["residue_degree"] = L.residue_degree ? json(*L.residue_degree) : json(nullptr);
        j["iterations"] = L.iterations;
        j["verified"] = ok;
        arr.push_back(std::move(j));
      } else {
        text << "lift of " << to_string(L.base) << " at precision " << L.lift.prec() << '\n'
             << "P~ = " << to_string(L.lift) << '\n'
             << "residue degree: " << (L.residue_degree ? std::to_string(*L.residue_degree) : "unknown") << '\n'
             << "f(P~) - σ(P~) " << (ok ? "=" : "!=") << " 0 mod t^" << L.lift.prec() << '\n';
      }
    }
    if (json_out()) {
      json j;
      j["lifts"] = std::move(arr);
      j["qualification"] = kQualification;
      emit(j);
    } else {
      out_ << text.str() << "note: " << kQualification << '\n';
    }
    return all_ok ? 0 : 1;
  }

  int witness_cmd() {
    const Instance I = parse_instance(o_.file);
    const DmlMap& f = I.dml();
    const auto L = sigma_fixed_lift(f, parse_residue_point(I.field, require_name(o_.point0, "--point0")),
                                    o_.prec.value_or(I.params.prec));
    const ProjPoint Q = critical_witness(f, L, o_.n);
    const DmlMap g = map_over(f, Q.field());
    ProjPoint img = Q;
    for (int k = 0; k < o_.n; ++k) img = apply_map(g, img);
    const bool ok = proj_eq(img, L.lift);
    if (json_out()) {
      json j;
      j["n"] = o_.n;
      j["lift"] = point_json(L.lift);
      j["witness"] = point_json(Q);
      j["verified"] = ok;
      emit(j);
    } else {
      out_ << "P~ = " << to_string(L.lift) << '\n'
           << "witness Q = σ^-" << o_.n << "(P~) = " << to_string(Q) << '\n'
           << "f^" << o_.n << "(Q) " << (ok ? "=" : "!=") << " P~ mod t^" << L.lift.prec() << '\n';
    }
    return ok ? 0 : 1;
  }

  int period_cmd() {
    const Instance I = parse_instance(o_.file);
    const DmlMap& f = I.dml();
    const auto L = sigma_fixed_lift(f, parse_residue_point(I.field, require_name(o_.point0, "--point0")),
                                    o_.prec.value_or(I.params.prec));
    const int d = minimal_period(f, L);
    if (json_out()) {
      json j;
      j["base"] = residue_json(L.base);
      j["residue_degree"] = *L.residue_degree;
      j["minimal_period"] = d;
      j["precision"] = L.lift.prec();
      j["qualification"] = kQualification;
      emit(j);
    } else {
      out_ << "lift of " << to_string(L.base) << " at precision " << L.lift.prec() << '\n'
           << "residue degree: " << *L.residue_degree << '\n'
           << "minimal period: " << d << '\n'
           << "note: " << kQualification << '\n';
    }
    return 0;
  }

  int twist_cmd() {
    const TwistInstance T = parse_twist(o_.file);
    const TwistSolution s = solve_twist(T.A, T.q, o_.r_max.value_or(T.r_max));
    print_twist_solution(s, json());
    return 0;
  }

  int normalize_cmd() {
    const Instance I = parse_instance(o_.file);
    const ConjugateResult c = normalize_conjugate(I.dml(), o_.r_max.value_or(I.params.r_max));
    const auto rec = recognize_dml_form(to_general(c.map), c.map.p, c.map.e);
    const auto* f2 = std::get_if<DmlMap>(&rec);
    const std::size_t n = c.map.A.rows();
    const bool identity = f2 && f2->A == Matrix<TruncSeries>::identity(n, TruncSeries(c.twist.field, kExactPrecision),
                                                                      TruncSeries::constant(FqElem::one(c.twist.field), kExactPrecision));
    json extra;
    extra["conjugate"] = dml_json(c.map);
    extra["matrix_part_is_identity"] = identity;
    if (!json_out()) out_ << "twist for A^-1:\n";
    print_twist_solution(c.twist, extra);
    if (!json_out()) {
      out_ << "conjugate B^-1 o f o B over " << field_name(c.twist.field) << ":\n"
           << to_string(c.map) << "matrix part is identity: " << (identity ? "yes" : "no") << '\n';
    }
    return identity ? 0 : 1;
  }

  int returns_cmd() {
    const Instance I = parse_instance(o_.file);
    const DmlMap& f = I.dml();
    const ProjPoint x = resolve_point(I, require_name(o_.point, "--point"));
    const Subvariety V = resolve_variety(I, require_name(o_.variety, "--variety"));
    const int H = o_.horizon.value_or(I.params.horizon);
    const int tau = o_.threshold.value_or(I.params.threshold.value_or(std::max(1, x.prec() - 4)));
    const ReturnSet rs = return_set(f, x, V, H, tau);
    const APDecomposition d = ap_decompose(rs, o_.max_period.value_or(I.params.max_period));
    if (o_.format == "csv") {
      out_ << "n,member";
      for (std::size_t g = 0; g < V.generators.size(); ++g) out_ << ",v" << g;
      out_ << '\n';
      for (int n = 0; n <= H; ++n) {
        const bool hit = std::binary_search(rs.hits.begin(), rs.hits.end(), n);
        out_ << n << ',' << (hit ? 1 : 0);
        for (int v : rs.valuations[n]) out_ << ',' << v;
        out_ << '\n';
      }
      return 0;
    }
    if (json_out()) {
      json j;
      j["point"] = o_.point;
      j["variety"] = o_.variety;
      j["horizon"] = H;
      j["threshold"] = tau;
      j["hits"] = rs.hits;
      json dj;
      dj["status"] = std::string(to_string(d.status));
      dj["period"] = d.period;
      dj["preperiod"] = d.preperiod;
      dj["sporadic"] = d.sporadic;
      json pr = json::array();
      for (const auto& p : d.progressions) pr.push_back(json::array({p.start, p.step}));
      dj["progressions"] = std::move(pr);
      j["decomposition"] = std::move(dj);
      j["qualification"] = kQualification;
      emit(j);
      return 0;
    }
    out_ << "return set of " << o_.point << " in " << o_.variety << '\n'
         << "horizon " << H << ", threshold " << tau << '\n'
         << "hits: " << set_string(rs.hits) << '\n'
         << "decomposition: " << to_string(d.status) << '\n';
    if (d.status == DecompositionStatus::ExactUpToHorizon) {
      out_ << "  period " << d.period << ", preperiod " << d.preperiod << '\n'
           << "  sporadic: " << set_string(d.sporadic) << '\n'
           << "  progressions:";
      if (d.progressions.empty()) out_ << " none";
      for (const auto& p : d.progressions) out_ << " (" << p.start << ", " << p.step << ")";
      out_ << '\n';
    }
    out_ << "note: " << kQualification << '\n';
    return 0;
  }

  int compose_cmd() {
    const Instance I = parse_instance(o_.file);
    const GeneralMap base = I.is_dml() ? to_general(I.dml()) : std::get<GeneralMap>(I.map);
    const GeneralMap F = iterate_map(base, o_.times);
    json j;
    if (json_out()) {
      j["times"] = o_.times;
      j["composite"] = general_json(F);
    } else {
      out_ << "f^" << o_.times << " (degree " << F.degree() << "):\n" << to_string(F);
    }
    int code = 0;
    if (o_.recognize) {
      const int e = log_p(I.field->p(), *o_.recognize);
      const auto rec = recognize_dml_form(F, I.field->p(), e);
      if (const auto* f = std::get_if<DmlMap>(&rec)) {
        if (json_out()) {
          j["recognized"] = dml_json(*f);
        } else {
          out_ << "recognized with q = " << *o_.recognize << ":\n" << to_string(*f);
        }
      } else {
        const auto& bad = std::get<NotInForm>(rec);
        std::string where = bad.coordinate >= 0 ? "coordinate " + std::to_string(bad.coordinate) : "map";
        if (bad.term) {
          HomogPoly mono(I.field, F.N + 1, F.degree());
          mono.add_term(*bad.term, TruncSeries::constant(FqElem::one(I.field), kExactPrecision));
          where += ", term " + to_string(mono);
        }
        if (json_out()) {
          j["not_in_form"] = where + ": " + bad.reason;
        } else {
          out_ << "not in form for q = " << *o_.recognize << ": " << where << ": " << bad.reason << '\n';
        }
        code = 1;
      }
    }
    if (json_out()) emit(j);
    return code;
  }

  int evidence_cmd() {
    const Instance I = parse_instance(o_.file);
    const DmlMap& f = I.dml();
    const Subvariety V = resolve_variety(I, require_name(o_.variety, "--variety"));
    const int prec = o_.prec.value_or(I.params.prec);
    const int tau = o_.threshold.value_or(I.params.threshold.value_or(std::max(1, prec - 4)));
    std::mt19937_64 rng(o_.seed);
    const auto order = I.field->order();
    if (!order) throw Error(ErrorKind::InvalidArgument, "field too large to sample");
    std::vector<std::vector<FqElem>> bases;
    while (static_cast<int>(bases.size()) < o_.samples) {
      std::vector<FqElem> pt;
      for (int i = 0; i <= f.N; ++i) pt.emplace_back(I.field, I.field->from_index(rng() % *order));
      auto lead = std::find_if(pt.begin(), pt.end(), [](const FqElem& x) { return !x.is_zero(); });
      if (lead == pt.end()) continue;
      const FqElem inv = lead->inverse();
      for (auto& c : pt) c = c * inv;
      bases.push_back(std::move(pt));
    }
    const auto lifts = lift_all(f, bases, prec, o_.threads);
    const InvarianceReport rep = invariance_evidence(f, V, lifts, tau);
    if (json_out()) {
      json j;
      j["seed"] = o_.seed;
      j["threshold"] = tau;
      json arr = json::array();
      for (const auto& e : rep.entries) {
        json x;
        x["base"] = residue_json(lifts[e.index].base);
        x["on_variety"] = e.on_variety;
        if (e.on_variety) x["image_on_variety"] = e.image_on_variety;
        arr.push_back(std::move(x));
      }
      j["samples"] = std::move(arr);
      j["on_variety"] = rep.sampled_on_variety;
      j["passed"] = rep.passed;
      j["qualification"] = kQualification;
      emit(j);
    } else {
      out_ << "invariance evidence for " << o_.variety << " at threshold " << tau << " (seed " << o_.seed << ")\n";
      for (const auto& e : rep.entries) {
        out_ << "  " << to_string(lifts[e.index].base) << ": "
             << (e.on_variety ? (e.image_on_variety ? "on V, image on V" : "on V, image NOT on V") : "not on V") << '\n';
      }
      out_ << (rep.empty_sample() ? "no sampled lift lies on V" :
                                    std::to_string(rep.passed) + "/" + std::to_string(rep.sampled_on_variety) + " passed")
           << '\n'
           << "note: " << kQualification << '\n';
    }
    return rep.all_pass() ? 0 : 1;
  }

 private:
  bool json_out() const { return o_.format == "json"; }
  void emit(const json& j) { out_ << j.dump(2) << '\n'; }

  static const std::string& require_name(const std::string& v, const char* flag) {
    if (v.empty()) throw Error(ErrorKind::InvalidArgument, std::string(flag) + " is required");
    return v;
  }

  void print_twist_solution(const TwistSolution& s, json extra) {
    Matrix<FqElem> residue = frobenius_matrix(s.B, log_p(s.field->p(), s.q));
    const Matrix<FqElem> AB = s.A * s.B;
    for (std::size_t i = 0; i < residue.rows(); ++i)
      for (std::size_t j = 0; j < residue.cols(); ++j) residue(i, j) -= AB(i, j);
    if (json_out()) {
      json j;
      j["q"] = s.q;
      j["r"] = s.r;
      j["field"] = field_name(s.field);
      json basis = json::array();
      for (const auto& b : s.basis) basis.push_back(residue_json(b));
      j["basis"] = std::move(basis);
      j["B"] = matrix_json(s.B);
      j["residue"] = matrix_json(residue);
      if (extra.is_object())
        for (auto& [k, v] : extra.items()) j[k] = v;
      emit(j);
      return;
    }
    out_ << "q = " << s.q << ", r = " << s.r << ", B over " << field_name(s.field) << '\n' << "basis:\n";
    for (const auto& b : s.basis) out_ << "  " << to_string(b) << '\n';
    out_ << "B = " << to_string(s.B) << '\n' << "B^(q) - A*B = " << to_string(residue) << '\n';
  }

  const Options& o_;
  std::ostream& out_;
};

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Frobenius-lifting dynamics on projective space over F_q[[t]]", "frobdyn"};
  app.require_subcommand(1);
  Options o;

  auto common = [&](CLI::App* sub) {
    sub->add_option("file", o.file, "instance file (JSON)");
    sub->add_option("--map", o.map_file, "instance file, as an alternative to the positional argument");
    sub->add_option("--format", o.format, "output format")->check(CLI::IsMember({"text", "json", "csv"}));
    sub->add_option("--threads", o.threads, "worker threads for batch work")->check(CLI::Range(1u, 256u));
    sub->add_option("--seed", o.seed, "seed for sampled commands");
  };
  struct Cmd {
    const char* name;
    const char* help;
    std::function<int(Runner&)> run;
  };
  const std::vector<Cmd> cmds = {
      {"validate", "check the map invariants and report the conditions", [](Runner& r) { return r.validate(); }},
      {"check-conditions", "zero differential and Frobenius special fiber", [](Runner& r) { return r.check(); }},
      {"orbit", "iterate the map on a named point", [](Runner& r) { return r.orbit_cmd(); }},
      {"lift", "sigma-fixed lift of a residue point", [](Runner& r) { return r.lift_cmd(); }},
      {"witness", "critical witness sigma^-n of a lift", [](Runner& r) { return r.witness_cmd(); }},
      {"period", "minimal period of a lift", [](Runner& r) { return r.period_cmd(); }},
      {"twist", "solve B^(q) = A B for a matrix file", [](Runner& r) { return r.twist_cmd(); }},
      {"normalize", "conjugate the map so its matrix part is the identity", [](Runner& r) { return r.normalize_cmd(); }},
      {"returns", "return set and progression decomposition", [](Runner& r) { return r.returns_cmd(); }},
      {"compose", "iterate the map symbolically", [](Runner& r) { return r.compose_cmd(); }},
      {"evidence", "sampled invariance evidence for a variety", [](Runner& r) { return r.evidence_cmd(); }},
  };
  std::vector<CLI::App*> subs;
  for (const auto& c : cmds) {
    CLI::App* sub = app.add_subcommand(c.name, c.help);
    common(sub);
    subs.push_back(sub);
  }
  auto sub = [&](const char* name) { return app.get_subcommand(name); };
  sub("orbit")->add_option("--point", o.point, "point name")->required();
  sub("orbit")->add_option("--horizon", o.horizon, "number of iterations");
  sub("lift")->add_option("--point0", o.point0, "residue point such as (1,a); default: all residue_points");
  sub("lift")->add_option("--prec", o.prec, "precision");
  sub("witness")->add_option("--point0", o.point0, "residue point")->required();
  sub("witness")->add_option("--n", o.n, "witness index")->check(CLI::NonNegativeNumber);
  sub("witness")->add_option("--prec", o.prec, "precision");
  sub("period")->add_option("--point0", o.point0, "residue point")->required();
  sub("period")->add_option("--prec", o.prec, "precision");
  sub("twist")->add_option("--r-max", o.r_max, "largest extension degree searched");
  sub("normalize")->add_option("--r-max", o.r_max, "largest extension degree searched");
  auto* ret = sub("returns");
  ret->add_option("--point", o.point, "point name")->required();
  ret->add_option("--variety", o.variety, "variety name")->required();
  ret->add_option("--horizon", o.horizon, "largest iterate examined");
  ret->add_option("--threshold", o.threshold, "membership threshold tau");
  ret->add_option("--max-period", o.max_period, "largest progression step searched");
  sub("compose")->add_option("--times", o.times, "number of factors")->check(CLI::PositiveNumber);
  sub("compose")->add_option("--recognize", o.recognize, "recognize the composite with this q");
  auto* ev = sub("evidence");
  ev->add_option("--variety", o.variety, "variety name")->required();
  ev->add_option("--samples", o.samples, "number of random residue points")->check(CLI::PositiveNumber);
  ev->add_option("--prec", o.prec, "lift precision");
  ev->add_option("--threshold", o.threshold, "membership threshold tau");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  if (o.file.empty()) o.file = o.map_file;
  if (o.file.empty() || (!o.map_file.empty() && o.map_file != o.file)) {
    err << "error: give exactly one instance file\n";
    return 2;
  }
  Runner runner(o, out);
  for (std::size_t i = 0; i < cmds.size(); ++i) {
    if (!subs[i]->parsed()) continue;
    if (o.format == "csv" && std::string(cmds[i].name) != "returns") {
      err << "error: csv output is only available for returns\n";
      return 2;
    }
    try {
      return cmds[i].run(runner);
    } catch (const Error& e) {
      err << "error: " << e.what() << '\n';
      return exit_code(e.kind());
    } catch (const std::exception& e) {
      err << "error: " << e.what() << '\n';
      return 2;
    }
  }
  return 2;
}

}  // namespace frobdyn
