#include <algorithm>

#include "cremona/dyn.hpp"
#include "cremona/error.hpp"

namespace cremona {
namespace {

int window(int n) { return (n + 1) / 2; }

// Common first difference of a[k] - a[k-1] over the final window, with
// a[-1] = base; nullopt when the differences vary.
std::optional<int> stable_slope(const std::vector<int>& a, int base) {
  const int n = static_cast<int>(a.size());
  if (n < 2) return std::nullopt;
  std::optional<int> s;
  for (int k = n - window(n); k < n; ++k) {
    const int d = a[k] - (k == 0 ? base : a[k - 1]);
    if (s && *s != d) return std::nullopt;
    s = d;
  }
  return s;
}

// The final window sets no new maximum; a[-1] = base.
bool bounded_tail(const std::vector<int>& a, int base) {
  const int n = static_cast<int>(a.size());
  if (n < 2) return false;
  const int first = n - window(n);
  int before = base;
  for (int k = 0; k < first; ++k) before = std::max(before, a[k]);
  return *std::max_element(a.begin() + first, a.end()) <= before;
}

constexpr int kOrbitDegreeCap = 64;

// Components of q o f that f does not contract: the strict preimage of the
// curve {q = 0}.
std::vector<Poly> strict_preimage(const ProjMap& f, const Poly& q) {
  const Poly pulled = q.substitute(f.coords().entries());
  std::vector<Poly> out;
  for (const auto& [p, e] : factor_q(pulled).factors) {
    (void)e;
    if (p.total_degree() > 0 && !contracts_curve(f, p)) out.push_back(p);
  }
  return out;
}

}  // namespace

MuResult mu(const ProjMap& f, int n, int degree_cap, int height_cap) {
  MuResult r;
  if (!f.has_inverse()) {
    r.note = "no inverse attached (the map may not be birational)";
    return r;
  }
  const IterateRun run = iterates(f, n, degree_cap);
  for (const auto& g : run.iterates) r.counts.push_back(base_points(g, height_cap).total());
  if (run.capped) r.note = "iterates stopped at n = " + std::to_string(run.iterates.size()) + " by the degree cap";
  if (const auto s = stable_slope(r.counts, 0); s && *s > 0) {
    r.value = *s;
    r.method = "slope";
    return r;
  }
  // A vertex fixed by f certifies mu = 0; try blowing up the base points
  // of f, then those of f and f^-1 together.
  const auto bf = base_points(f, height_cap).points();
  auto both = bf;
  for (const auto& p : base_points(f.inverse(), height_cap).points()) both.push_back(p);
  for (const auto& pts : {bf, both}) {
    const MarkedSurfaceVertex v = make_vertex(identity_map(2), pts);
    if (distance_vertices(v, act(f, v), height_cap) == 0) {
      r.value = 0;
      r.method = "fixed-vertex";
      r.fixed_vertex = v;
      return r;
    }
  }
  if (!run.capped && bounded_tail(r.counts, 0)) {
    r.value = 0;
    r.method = "bounded";
    return r;
  }
  if (r.note.empty()) r.note = "no stable positive slope and no fixed vertex found";
  return r;
}

NuResult nu1(const ProjMap& f, int n, int degree_cap) {
  NuResult r;
  if (!f.has_inverse()) {
    r.note = "no inverse attached (the map may not be birational)";
    return r;
  }
  // C = f^-k(D) for D in Exc(f) lies in Exc(f^m) (k < m) iff the point
  // f(D) is not a base point of f^(m-k-1).
  const BasePointTree base_finv = base_points(f.inverse());
  std::vector<BubblePoint> images;
  for (const auto& [seed, e] : exc_components(f).components) {
    (void)e;
    images.push_back(contracted_curve_image(f, seed, &base_finv));
    HypersurfaceOrbit o{seed, {seed}, OrbitStatus::kPersists, 0};
    while (static_cast<int>(o.trajectory.size()) < n) {
      const auto pre = strict_preimage(f, o.trajectory.back());
      if (pre.empty()) {
        o.status = OrbitStatus::kAbsorbed;
        o.absorbed_at = static_cast<int>(o.trajectory.size());
        break;
      }
      if (pre.size() != 1) throw Error(ErrorCode::kInternal, "preimage of a curve splits under a birational map");
      if (pre[0].total_degree() > kOrbitDegreeCap) {
        o.status = OrbitStatus::kDegreeCap;
        break;
      }
      o.trajectory.push_back(pre[0]);
    }
    r.orbits.push_back(std::move(o));
  }
  const IterateRun run = iterates(f, n - 1, degree_cap);
  std::vector<BasePointTree> bases(1);  // bases[m] = Base(f^m)
  for (const auto& g : run.iterates) bases.push_back(base_points(g));
  for (int m = 1; m <= n; ++m) {
    if (m - 1 >= static_cast<int>(bases.size())) {
      r.note = "iterates stopped at n = " + std::to_string(bases.size() - 1) + " by the degree cap";
      break;
    }
    int c = 0;
    bool complete = true;
    for (std::size_t i = 0; i < r.orbits.size(); ++i) {
      const auto& o = r.orbits[i];
      if (o.status == OrbitStatus::kDegreeCap && static_cast<int>(o.trajectory.size()) < m) complete = false;
      const int len = std::min(m, static_cast<int>(o.trajectory.size()));
      for (int k = 0; k < len; ++k) c += bases[m - k - 1].contains(images[i]) ? 0 : 1;
    }
    if (!complete) {
      r.note = "a backward orbit exceeded degree " + std::to_string(kOrbitDegreeCap);
      break;
    }
    r.counts.push_back(c);
  }
  // Cross-check against factoring the Jacobian of small iterates.
  const int direct_n = std::min<int>(3, static_cast<int>(r.counts.size()));
  const IterateRun small = iterates(f, direct_n, degree_cap);
  for (std::size_t k = 0; k < small.iterates.size(); ++k) {
    const int direct = exc_components(small.iterates[k]).count();
    r.direct.push_back({static_cast<int>(k + 1), direct});
    if (direct != r.counts[k]) {
      throw Error(ErrorCode::kInternal, "orbit count " + std::to_string(r.counts[k]) + " disagrees with " +
                                            std::to_string(direct) + " contracted curves of f^" +
                                            std::to_string(k + 1));
    }
  }
  if (static_cast<int>(r.counts.size()) == n) {
    if (const auto s = stable_slope(r.counts, 0); s && *s >= 0) r.value = *s;
    if (!r.value && bounded_tail(r.counts, 0)) r.value = 0;
    if (!r.value) r.note = "differences of |Exc(f^n)| are not stable";
  }
  return r;
}

const char* degree_class_name(DegreeClass c) {
  switch (c) {
    case DegreeClass::kBounded:
      return "bounded";
    case DegreeClass::kLinear:
      return "linear";
    case DegreeClass::kQuadratic:
      return "quadratic";
    case DegreeClass::kExponential:
      return "exponential";
    case DegreeClass::kUndecided:
      return "undecided";
  }
  return "undecided";
}

DegreeClass degree_growth_class(const std::vector<int>& d) {
  const int n = static_cast<int>(d.size());
  if (n < 2) return DegreeClass::kUndecided;
  const int w = window(n);
  const int first = n - w;
  if (bounded_tail(d, 1)) return DegreeClass::kBounded;
  if (const auto s = stable_slope(d, 1); s && *s > 0) return DegreeClass::kLinear;
  std::vector<int> diff;
  for (int k = 0; k < n; ++k) diff.push_back(d[k] - (k == 0 ? 1 : d[k - 1]));
  {
    std::optional<int> s;
    bool ok = n >= 3;
    for (int k = std::max(1, first); k < n && ok; ++k) {
      const int dd = diff[k] - diff[k - 1];
      if (s && *s != dd) ok = false;
      s = dd;
    }
    if (ok && s && *s > 0) return DegreeClass::kQuadratic;
  }
  bool expo = true;
  for (int k = first; k < n && expo; ++k) {
    const long long prev = k == 0 ? 1 : d[k - 1];
    // d[k] / prev > 1 + 1/10
    expo = 10LL * d[k] > 11LL * prev;
  }
  return expo ? DegreeClass::kExponential : DegreeClass::kUndecided;
}

const char* isometry_name(Isometry i) {
  switch (i) {
    case Isometry::kElliptic:
      return "elliptic";
    case Isometry::kParabolic:
      return "parabolic";
    case Isometry::kLoxodromic:
      return "loxodromic";
    case Isometry::kUndecided:
      return "undecided";
  }
  return "undecided";
}

InvariantsReport classify_map(const std::string& id, const ProjMap& f, int n, int degree_cap,
                                 int height_cap) {
  InvariantsReport r;
  r.id = id;
  r.iterations = n;
  const IterateRun run = iterates(f, n, degree_cap);
  for (const auto& g : run.iterates) r.degrees.push_back(g.degree());
  r.degree_capped = run.capped;
  if (run.capped) {
    r.notes.push_back("degree cap reached after n = " + std::to_string(r.degrees.size()) +
                      "; growth classified on the computed prefix");
  }
  r.degree_class = degree_growth_class(r.degrees);
  if (!r.degrees.empty()) r.lambda_estimate = {r.degrees.back(), static_cast<int>(r.degrees.size())};

  if (f.dim() != 2) {
    r.notes.push_back("mu and nu are computed for maps of the plane only");
  } else {
    r.mu = mu(f, n, degree_cap, height_cap);
    r.nu_f = nu1(f, n, degree_cap);
    if (f.has_inverse()) r.nu_finv = nu1(f.inverse(), n, degree_cap);
  }
  for (const auto* note : {&r.mu.note, &r.nu_f.note, &r.nu_finv.note}) {
    if (!note->empty() && std::find(r.notes.begin(), r.notes.end(), *note) == r.notes.end()) {
      r.notes.push_back(*note);
    }
  }

  switch (r.degree_class) {
    case DegreeClass::kBounded:
      r.hyperbolic = Isometry::kElliptic;
      break;
    case DegreeClass::kLinear:
    case DegreeClass::kQuadratic:
      r.hyperbolic = Isometry::kParabolic;
      break;
    case DegreeClass::kExponential:
      r.hyperbolic = Isometry::kLoxodromic;
      break;
    case DegreeClass::kUndecided:
      break;
  }
  if (r.mu.value) r.blowup = *r.mu.value == 0 ? Isometry::kElliptic : Isometry::kLoxodromic;
  if (r.nu_f.value && r.nu_finv.value) {
    r.blowup0 = *r.nu_f.value + *r.nu_finv.value == 0 ? Isometry::kElliptic : Isometry::kLoxodromic;
  }
  if (r.hyperbolic != Isometry::kUndecided && r.mu.value && r.nu_f.value) {
    const bool mu_pos = *r.mu.value > 0, nu_pos = *r.nu_f.value > 0;
    switch (r.degree_class) {
      case DegreeClass::kBounded:
        if (!mu_pos && !nu_pos) r.table_row = 1;
        break;
      case DegreeClass::kLinear:
        if (mu_pos) r.table_row = nu_pos ? 3 : 2;
        break;
      case DegreeClass::kQuadratic:
        if (!mu_pos && !nu_pos) r.table_row = 4;
        break;
      case DegreeClass::kExponential:
        if (!mu_pos && !nu_pos) r.table_row = 5;
        if (mu_pos) r.table_row = nu_pos ? 7 : 6;
        break;
      case DegreeClass::kUndecided:
        break;
    }
    if (!r.table_row) r.notes.push_back("invariants match no row of the table");
  }
  return r;
}

namespace {

nlohmann::json opt(const std::optional<int>& v) { return v ? nlohmann::json(*v) : nlohmann::json("undecided"); }

nlohmann::json nu_json(const NuResult& r) {
  nlohmann::json orbits = nlohmann::json::array();
  for (const auto& o : r.orbits) {
    nlohmann::json traj = nlohmann::json::array();
    for (const auto& c : o.trajectory) traj.push_back(c.to_string());
    const char* status = o.status == OrbitStatus::kPersists  ? "persists"
                         : o.status == OrbitStatus::kAbsorbed ? "absorbed"
                                                              : "degree-cap";
    nlohmann::json e = {{"seed", o.seed.to_string()}, {"trajectory", traj}, {"status", status}};
    if (o.status == OrbitStatus::kAbsorbed) e["absorbed_at"] = o.absorbed_at;
    orbits.push_back(e);
  }
  nlohmann::json direct = nlohmann::json::object();
  for (const auto& [k, c] : r.direct) direct[std::to_string(k)] = c;
  return {{"value", opt(r.value)}, {"exc_counts", r.counts}, {"orbits", orbits}, {"direct_check", direct}};
}

}  // namespace

nlohmann::json report_to_json(const InvariantsReport& r) {
  nlohmann::json mu = {{"value", opt(r.mu.value)}, {"base_point_counts", r.mu.counts}};
  if (!r.mu.method.empty()) mu["method"] = r.mu.method;
  if (r.mu.fixed_vertex) mu["fixed_vertex"] = r.mu.fixed_vertex->to_string();
  nlohmann::json j = {
      {"id", r.id},
      {"degrees", r.degrees},
      {"degree_class", degree_class_name(r.degree_class)},
      {"lambda_estimate", {{"degree", r.lambda_estimate.first}, {"n", r.lambda_estimate.second}}},
      {"mu", mu},
      {"nu_f", nu_json(r.nu_f)},
      {"nu_finv", nu_json(r.nu_finv)},
      {"table_row", r.table_row ? nlohmann::json(*r.table_row) : nlohmann::json(nullptr)},
      {"isometries",
       {{"hyperbolic_space", isometry_name(r.hyperbolic)},
        {"blowup_complex", isometry_name(r.blowup)},
        {"blowup_complex_0", isometry_name(r.blowup0)}}},
      {"notes", r.notes},
      {"provenance", {{"iterations", r.iterations}, {"degree_capped", r.degree_capped}}},
  };
  return j;
}

DegreeBoundReport check_degree_bound(const ProjMap& f, int n, int degree_cap) {
  DegreeBoundReport r;
  r.dim = static_cast<int>(f.dim());
  if (!f.has_inverse()) {
    r.note = "no inverse attached; the bound is not checked";
    return r;
  }
  const NuResult nf = nu1(f, n, degree_cap);
  const NuResult ni = nu1(f.inverse(), n, degree_cap);
  r.witness = (nf.value && *nf.value > 0) || (ni.value && *ni.value > 0);
  r.degrees = degree_sequence(f, n, degree_cap);
  r.exc_counts = nf.counts;
  for (std::size_t k = 0; k < r.exc_counts.size() && k < r.degrees.size(); ++k) {
    if (static_cast<long long>(r.dim + 1) * r.degrees[k] < r.exc_counts[k]) r.holds = false;
  }
  if (!r.witness) r.note = "no contracted hypersurface persists under iteration; the bound is vacuous";
  return r;
}

nlohmann::json bound_to_json(const DegreeBoundReport& r) {
  nlohmann::json rows = nlohmann::json::array();
  for (std::size_t k = 0; k < r.degrees.size() && k < r.exc_counts.size(); ++k) {
    rows.push_back({{"n", k + 1},
                    {"degree", r.degrees[k]},
                    {"exc", r.exc_counts[k]},
                    {"bound", std::to_string(r.exc_counts[k]) + "/" + std::to_string(r.dim + 1)}});
  }
  nlohmann::json j = {{"witness", r.witness}, {"holds", r.holds}, {"dim", r.dim}, {"rows", rows}};
  if (!r.note.empty()) j["note"] = r.note;
  return j;
}

}  // namespace cremona
