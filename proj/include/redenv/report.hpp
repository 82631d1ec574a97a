#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "json.hpp"
#include "redenv/liealg.hpp"

namespace redenv {

// nlohmann::json keeps keys sorted (std::map), so serialization is
// deterministic and golden-file friendly.
using Json = nlohmann::json;

inline constexpr const char* kVersion = "0.1.0";
inline constexpr int kReportVersion = 1;

struct TensorFiltArgs {
    std::string alg = "sl2";
    u64 p = 5;
    std::string chi = "zero";
    std::string chi2 = "zero";
    std::string lambda;
    std::string mu;
    std::uint64_t seed = 0;
};

// Parsed algebra spec "sl2", "gl3", ...
std::pair<AlgKind, int> parse_alg(const std::string& s);
// chi spec: "zero", "regular-nilpotent", "pyramid:1,2,2,4", or value lists
// like "e21=1,e32=-1" (aliases e/f/h for rank 2 root vectors).
ChiForm parse_chi(const LieAlg& g, u64 p, const std::string& spec);
// Weight: either a single integer (the alpha-pairing for N = 2) or
// comma-separated epsilon coordinates.
WeightFp parse_weight(const LieAlg& g, u64 p, const std::string& spec);

Json cmd_tensor_filtration(const TensorFiltArgs& args);
Json cmd_suite(const std::string& name, u64 p, std::uint64_t seed, int depth = 0);
// Pyramid report: certified centralizer/orbit dimensions, the minimal module
// dimension, and (within the enumeration budget) the minimal-label count.
Json cmd_pyramid(const std::vector<int>& partition, u64 p);

// True iff every certification boolean in the report is true.
bool report_certified(const Json& report);

std::string render_text(const Json& report);

}  // namespace redenv
