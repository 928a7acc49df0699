#include "rineq/io.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <string>

namespace rineq {
namespace {

using Index = Eigen::Index;

Error parse_error(std::string_view where, const std::string& what) {
  return Error(ErrorCode::kParseError, what, std::string(where));
}

Json number(double v) {
  if (std::isfinite(v)) return v;
  return nullptr;
}

double get_number(const Json& j, std::string_view where) {
  if (j.is_null()) return std::numeric_limits<double>::infinity();
  if (!j.is_number()) throw parse_error(where, "expected a number");
  return j.get<double>();
}

const Json& field(const Json& j, const char* name) {
  if (!j.is_object() || !j.contains(name)) {
    throw parse_error(name, std::string("missing field \"") + name + "\"");
  }
  return j.at(name);
}

Json complex_list(const std::vector<Complex>& v) {
  Json out = Json::array();
  for (const Complex& z : v) out.push_back(complex_to_json(z));
  return out;
}

std::vector<Complex> complex_list_from(const Json& j, std::string_view where) {
  if (!j.is_array()) throw parse_error(where, "expected an array");
  std::vector<Complex> out;
  for (const Json& e : j) out.push_back(complex_from_json(e, where));
  return out;
}

template <typename Enum, std::size_t N>
Enum enum_from(std::string_view s, const std::pair<Enum, std::string_view> (&table)[N],
               std::string_view where) {
  for (const auto& [value, name] : table) {
    if (name == s) return value;
  }
  throw parse_error(where, "unknown value \"" + std::string(s) + "\"");
}

template <typename Enum, std::size_t N>
std::string_view enum_name(Enum e, const std::pair<Enum, std::string_view> (&table)[N]) {
  for (const auto& [value, name] : table) {
    if (value == e) return name;
  }
  return "unknown";
}

constexpr std::pair<SolutionMode, std::string_view> kModes[] = {
    {SolutionMode::kStabilizing, "stabilizing"},
    {SolutionMode::kAntiStabilizing, "anti_stabilizing"}};
constexpr std::pair<BlockKind, std::string_view> kKinds[] = {
    {BlockKind::kNeutral, "neutral"},
    {BlockKind::kFirstType, "first_type"},
    {BlockKind::kSecondType, "second_type"}};
constexpr std::pair<VerdictStatus, std::string_view> kStatuses[] = {
    {VerdictStatus::kSolvable, "solvable"},
    {VerdictStatus::kNotSolvable, "not_solvable"},
    {VerdictStatus::kIndeterminate, "indeterminate"}};
constexpr std::pair<DeltaGStrategy, std::string_view> kStrategies[] = {
    {DeltaGStrategy::kMigration, "migration"},
    {DeltaGStrategy::kScaledIdentity, "scaled_identity"},
    {DeltaGStrategy::kUser, "user"}};
constexpr std::pair<TraceEventKind, std::string_view> kEventKinds[] = {
    {TraceEventKind::kLeftAxis, "left_axis"},
    {TraceEventKind::kMetOppositeType, "met_opposite_type"},
    {TraceEventKind::kFrozen, "frozen"}};

}  // namespace

Json complex_to_json(Complex z) {
  if (z.imag() == 0.0) return number(z.real());
  return Json::array({number(z.real()), number(z.imag())});
}

Complex complex_from_json(const Json& j, std::string_view where) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number()) {
    return {j[0].get<double>(), j[1].get<double>()};
  }
  throw parse_error(where, "entry must be a number or a [re, im] pair, got " + j.dump());
}

Json matrix_to_json(const ComplexMatrix& m) {
  Json rows = Json::array();
  for (Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Index k = 0; k < m.cols(); ++k) row.push_back(complex_to_json(m(i, k)));
    rows.push_back(std::move(row));
  }
  return rows;
}

ComplexMatrix matrix_from_json(const Json& j, std::string_view where, Index rows) {
  if (!j.is_array()) throw parse_error(where, "matrix must be an array of rows");
  if (j.empty()) return ComplexMatrix(rows < 0 ? 0 : rows, 0);
  const auto r = static_cast<Index>(j.size());
  if (!j[0].is_array()) throw parse_error(where, "matrix must be an array of rows");
  const auto c = static_cast<Index>(j[0].size());
  ComplexMatrix m(r, c);
  for (Index i = 0; i < r; ++i) {
    const Json& row = j[static_cast<std::size_t>(i)];
    if (!row.is_array() || static_cast<Index>(row.size()) != c) {
      throw parse_error(where, "rows have different lengths");
    }
    for (Index k = 0; k < c; ++k) m(i, k) = complex_from_json(row[static_cast<std::size_t>(k)], where);
  }
  return m;
}

RiccatiProblem parse_problem(const Json& j, double tol) {
  if (!j.is_object()) throw parse_error("problem", "problem must be a JSON object");
  const std::string form = j.contains("form") ? j.at("form").get<std::string>() : "standard";
  const ComplexMatrix A = matrix_from_json(field(j, "A"), "A");
  const Index n = A.rows();
  const ComplexMatrix G = matrix_from_json(field(j, "G"), "G");
  RiccatiProblem p;
  if (form == "standard") {
    p = {A, matrix_from_json(field(j, "B"), "B", n), G, matrix_from_json(field(j, "Gamma"), "Gamma")};
  } else if (form == "absolute_stability") {
    p = from_absolute_stability(A, matrix_from_json(field(j, "B"), "B", n), G,
                                matrix_from_json(field(j, "Gamma"), "Gamma"), tol);
  } else if (form == "hinf") {
    p = from_hinf(A, matrix_from_json(field(j, "B_w"), "B_w", n),
                  matrix_from_json(field(j, "B_u"), "B_u", n), G,
                  matrix_from_json(field(j, "Gamma_w"), "Gamma_w"),
                  matrix_from_json(field(j, "Gamma_u"), "Gamma_u"), tol);
  } else {
    throw parse_error("form", "unknown problem form \"" + form + "\"");
  }
  if (j.contains("n") && j.at("n").get<Index>() != p.n()) {
    throw parse_error("n", "declared n does not match A");
  }
  if (j.contains("m") && j.at("m").get<Index>() != p.m()) {
    throw parse_error("m", "declared m does not match B");
  }
  return p;
}

RiccatiProblem load_problem(const std::filesystem::path& path, double tol) {
  std::ifstream in(path);
  if (!in) throw parse_error(path.string(), "cannot open problem file");
  Json j;
  try {
    j = Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw parse_error(path.string(), e.what());
  }
  try {
    return parse_problem(j, tol);
  } catch (const nlohmann::json::exception& e) {
    throw parse_error(path.string(), e.what());
  }
}

Json problem_to_json(const RiccatiProblem& p) {
  Json j;
  j["n"] = p.n();
  j["m"] = p.m();
  j["A"] = matrix_to_json(p.A);
  j["B"] = matrix_to_json(p.B);
  j["G"] = matrix_to_json(p.G);
  j["Gamma"] = matrix_to_json(p.Gamma);
  return j;
}

std::string_view to_string(SolutionMode mode) { return enum_name(mode, kModes); }
SolutionMode solution_mode_from_string(std::string_view s) { return enum_from(s, kModes, "mode"); }
std::string_view to_string(BlockKind kind) { return enum_name(kind, kKinds); }
std::string_view to_string(VerdictStatus status) { return enum_name(status, kStatuses); }
std::string_view to_string(DeltaGStrategy strategy) { return enum_name(strategy, kStrategies); }
std::string_view to_string(TraceEventKind kind) { return enum_name(kind, kEventKinds); }

Json error_to_json(const Error& e) {
  Json j;
  j["code"] = std::string(to_string(e.code()));
  j["message"] = e.what();
  j["context"] = e.context();
  return j;
}

void to_json(Json& j, const ValidationReport& r) {
  j = Json::object();
  j["hermitian_ok"] = r.hermitian_ok;
  j["gamma_invertible"] = r.gamma_invertible;
  j["controllable"] = r.controllable;
  j["a_axis_eigenvalues"] = r.a_axis_eigenvalues;
}

void from_json(const Json& j, ValidationReport& r) {
  r.hermitian_ok = field(j, "hermitian_ok").get<bool>();
  r.gamma_invertible = field(j, "gamma_invertible").get<bool>();
  r.controllable = field(j, "controllable").get<bool>();
  r.a_axis_eigenvalues = field(j, "a_axis_eigenvalues").get<std::vector<double>>();
}

void to_json(Json& j, const AxisGroup& g) {
  j = Json::object();
  j["omega"] = g.omega;
  j["algebraic_multiplicity"] = g.multiplicity;
  j["members"] = g.members;
}

void from_json(const Json& j, AxisGroup& g) {
  g.omega = get_number(field(j, "omega"), "omega");
  g.multiplicity = field(j, "algebraic_multiplicity").get<int>();
  g.members = field(j, "members").get<std::vector<int>>();
}

void to_json(Json& j, const SpectrumReport& r) {
  j = Json::object();
  j["eigenvalues"] = complex_list(r.eigenvalues);
  Json pairs = Json::array();
  for (const auto& [a, b] : r.pairing) pairs.push_back({a, b});
  j["pairing"] = std::move(pairs);
  j["axis_groups"] = r.axis_groups;
  j["off_axis_count"] = r.off_axis_count;
  j["axis_tol"] = r.axis_tol;
  j["norm"] = r.norm;
}

void from_json(const Json& j, SpectrumReport& r) {
  r.eigenvalues = complex_list_from(field(j, "eigenvalues"), "eigenvalues");
  r.pairing.clear();
  for (const Json& p : field(j, "pairing")) r.pairing.emplace_back(p.at(0).get<int>(), p.at(1).get<int>());
  r.axis_groups = field(j, "axis_groups").get<std::vector<AxisGroup>>();
  r.off_axis_count = field(j, "off_axis_count").get<int>();
  r.axis_tol = get_number(field(j, "axis_tol"), "axis_tol");
  r.norm = get_number(field(j, "norm"), "norm");
}

void to_json(Json& j, const JordanBlockInfo& b) {
  j = Json::object();
  j["omega"] = b.omega;
  j["size"] = b.size;
  j["beta"] = b.beta;
  j["kind"] = std::string(to_string(b.kind));
  j["epsilon"] = complex_to_json(b.epsilon);
  j["chain_basis"] = matrix_to_json(b.chain_basis);
}

void from_json(const Json& j, JordanBlockInfo& b) {
  b.omega = get_number(field(j, "omega"), "omega");
  b.size = field(j, "size").get<int>();
  b.beta = field(j, "beta").get<int>();
  b.kind = enum_from(field(j, "kind").get<std::string>(), kKinds, "kind");
  b.epsilon = complex_from_json(field(j, "epsilon"), "epsilon");
  b.chain_basis = matrix_from_json(field(j, "chain_basis"), "chain_basis");
}

void to_json(Json& j, const AxisClassification& c) {
  j = Json::object();
  j["total_axis_multiplicity"] = c.total_axis_multiplicity;
  j["blocks"] = c.blocks;
}

void from_json(const Json& j, AxisClassification& c) {
  c.total_axis_multiplicity = field(j, "total_axis_multiplicity").get<int>();
  c.blocks = field(j, "blocks").get<std::vector<JordanBlockInfo>>();
}

void to_json(Json& j, const SolvabilityVerdict& v) {
  j = Json::object();
  j["solvable"] = v.solvable;
  j["status"] = std::string(to_string(v.status));
  Json s = Json::array();
  for (const FrequencyValue& f : v.s_values) s.push_back({{"omega", f.omega}, {"s", f.s}});
  j["s_values"] = std::move(s);
  j["witness"] = v.witness ? Json(*v.witness) : Json(nullptr);
  j["first_type_count"] = v.first_type_count;
  j["second_type_count"] = v.second_type_count;
  j["neutral_count"] = v.neutral_count;
  j["diagnostic"] = v.diagnostic;
  j["classification"] = v.classification;
}

void from_json(const Json& j, SolvabilityVerdict& v) {
  v.solvable = field(j, "solvable").get<bool>();
  v.status = enum_from(field(j, "status").get<std::string>(), kStatuses, "status");
  v.s_values.clear();
  for (const Json& f : field(j, "s_values")) {
    v.s_values.push_back({get_number(field(f, "omega"), "omega"), field(f, "s").get<int>()});
  }
  const Json& w = field(j, "witness");
  v.witness = w.is_null() ? std::nullopt : std::optional<double>(w.get<double>());
  v.first_type_count = field(j, "first_type_count").get<int>();
  v.second_type_count = field(j, "second_type_count").get<int>();
  v.neutral_count = field(j, "neutral_count").get<int>();
  v.diagnostic = field(j, "diagnostic").get<std::string>();
  v.classification = field(j, "classification").get<AxisClassification>();
}

void to_json(Json& j, const SolutionCertificate& c) {
  j = Json::object();
  j["mode"] = std::string(to_string(c.mode));
  j["H"] = matrix_to_json(c.H);
  j["residual_norm"] = number(c.residual_norm);
  j["closed_loop_eigenvalues"] = complex_list(c.closed_loop_eigenvalues);
  j["inequality_margin"] = number(c.inequality_margin);
  j["x1_condition"] = number(c.x1_condition);
  j["delta_g"] = c.delta_g ? matrix_to_json(*c.delta_g) : Json(nullptr);
}

void from_json(const Json& j, SolutionCertificate& c) {
  c.mode = solution_mode_from_string(field(j, "mode").get<std::string>());
  c.H = matrix_from_json(field(j, "H"), "H");
  c.residual_norm = get_number(field(j, "residual_norm"), "residual_norm");
  c.closed_loop_eigenvalues =
      complex_list_from(field(j, "closed_loop_eigenvalues"), "closed_loop_eigenvalues");
  c.inequality_margin = get_number(field(j, "inequality_margin"), "inequality_margin");
  c.x1_condition = get_number(field(j, "x1_condition"), "x1_condition");
  const Json& dg = field(j, "delta_g");
  c.delta_g = dg.is_null() ? std::nullopt
                           : std::optional<ComplexMatrix>(matrix_from_json(dg, "delta_g"));
}

void to_json(Json& j, const DeltaGResult& r) {
  j = Json::object();
  j["strategy"] = std::string(to_string(r.strategy));
  j["delta_g"] = matrix_to_json(r.delta_g);
  j["axis_free"] = r.axis_free;
  j["iterations"] = r.iterations;
}

void from_json(const Json& j, DeltaGResult& r) {
  r.strategy = enum_from(field(j, "strategy").get<std::string>(), kStrategies, "strategy");
  r.delta_g = matrix_from_json(field(j, "delta_g"), "delta_g");
  r.axis_free = field(j, "axis_free").get<bool>();
  r.iterations = field(j, "iterations").get<int>();
}

void to_json(Json& j, const KYGridReport& r) {
  j = Json::object();
  j["omega_max"] = r.omega_max;
  j["grid_points"] = r.grid_points;
  j["min_abs_det"] = number(r.min_abs_det);
  j["argmin_omega"] = r.argmin_omega ? Json(*r.argmin_omega) : Json("infinity");
  j["abs_det_at_infinity"] = number(r.abs_det_at_infinity);
  j["negative_definite"] = r.negative_definite;
  j["positive_definite"] = r.positive_definite;
  Json minima = Json::array();
  for (const GridMinimum& m : r.local_minima) {
    minima.push_back({{"omega", m.omega}, {"abs_det", number(m.abs_det)}});
  }
  j["local_minima"] = std::move(minima);
  j["skipped"] = r.skipped;
}

void from_json(const Json& j, KYGridReport& r) {
  r.omega_max = get_number(field(j, "omega_max"), "omega_max");
  r.grid_points = field(j, "grid_points").get<int>();
  r.min_abs_det = get_number(field(j, "min_abs_det"), "min_abs_det");
  const Json& a = field(j, "argmin_omega");
  r.argmin_omega = a.is_string() ? std::nullopt : std::optional<double>(a.get<double>());
  r.abs_det_at_infinity = get_number(field(j, "abs_det_at_infinity"), "abs_det_at_infinity");
  r.negative_definite = field(j, "negative_definite").get<bool>();
  r.positive_definite = field(j, "positive_definite").get<bool>();
  r.local_minima.clear();
  for (const Json& m : field(j, "local_minima")) {
    r.local_minima.push_back(
        {get_number(field(m, "omega"), "omega"), get_number(field(m, "abs_det"), "abs_det")});
  }
  r.skipped = field(j, "skipped").get<std::vector<double>>();
}

void to_json(Json& j, const TraceEvent& e) {
  j = Json::object();
  j["t"] = e.t;
  j["kind"] = std::string(to_string(e.kind));
  j["frequencies"] = e.frequencies;
  j["trajectories"] = e.trajectories;
}

void from_json(const Json& j, TraceEvent& e) {
  e.t = get_number(field(j, "t"), "t");
  e.kind = enum_from(field(j, "kind").get<std::string>(), kEventKinds, "kind");
  e.frequencies = field(j, "frequencies").get<std::vector<double>>();
  e.trajectories = field(j, "trajectories").get<std::vector<int>>();
}

}  // namespace rineq
