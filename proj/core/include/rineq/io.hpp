#pragma once

#include <filesystem>
#include <string_view>

#include <nlohmann/json.hpp>

#include "rineq/error.hpp"
#include "rineq/hamiltonian.hpp"
#include "rineq/krein.hpp"
#include "rineq/migration.hpp"
#include "rineq/problem.hpp"
#include "rineq/riccati.hpp"

namespace rineq {

/// Field order in emitted documents is the order of insertion.
using Json = nlohmann::ordered_json;

/// Entries are real numbers or [re, im] pairs. Real entries are written as
/// plain numbers.
Json complex_to_json(Complex z);
Complex complex_from_json(const Json& j, std::string_view where);
Json matrix_to_json(const ComplexMatrix& m);
/// `rows` fixes the row count of a matrix with zero columns, which an array
/// of rows cannot express.
ComplexMatrix matrix_from_json(const Json& j, std::string_view where, Eigen::Index rows = -1);

/// Problem documents carry "A", "B", "G", "Gamma" and optionally "n", "m" and
/// "form" ("standard", "absolute_stability" with Gamma > 0, or "hinf" with
/// "B_w", "B_u", "Gamma_w", "Gamma_u" instead of B and Gamma).
/// Throws kParseError on malformed input.
RiccatiProblem parse_problem(const Json& j, double tol = kDefaultTol);
RiccatiProblem load_problem(const std::filesystem::path& path, double tol = kDefaultTol);
Json problem_to_json(const RiccatiProblem& p);

std::string_view to_string(SolutionMode mode);
SolutionMode solution_mode_from_string(std::string_view s);
std::string_view to_string(BlockKind kind);
std::string_view to_string(VerdictStatus status);
std::string_view to_string(DeltaGStrategy strategy);
std::string_view to_string(TraceEventKind kind);

Json error_to_json(const Error& e);

void to_json(Json& j, const ValidationReport& r);
void from_json(const Json& j, ValidationReport& r);
void to_json(Json& j, const AxisGroup& g);
void from_json(const Json& j, AxisGroup& g);
void to_json(Json& j, const SpectrumReport& r);
void from_json(const Json& j, SpectrumReport& r);
void to_json(Json& j, const JordanBlockInfo& b);
void from_json(const Json& j, JordanBlockInfo& b);
void to_json(Json& j, const AxisClassification& c);
void from_json(const Json& j, AxisClassification& c);
void to_json(Json& j, const SolvabilityVerdict& v);
void from_json(const Json& j, SolvabilityVerdict& v);
void to_json(Json& j, const SolutionCertificate& c);
void from_json(const Json& j, SolutionCertificate& c);
void to_json(Json& j, const DeltaGResult& r);
void from_json(const Json& j, DeltaGResult& r);
void to_json(Json& j, const KYGridReport& r);
void from_json(const Json& j, KYGridReport& r);
void to_json(Json& j, const TraceEvent& e);
void from_json(const Json& j, TraceEvent& e);

}  // namespace rineq
