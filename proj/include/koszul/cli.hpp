#pragma once

#include <cstddef>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "koszul/field.hpp"
#include "koszul/poset.hpp"

namespace koszul::cli {

inline constexpr const char* kSchema = "koszul-report/1";

enum class Format { json, csv, text };

struct RunConfig {
  FieldSpec field;
  std::optional<std::size_t> m_max_override;  // nullopt = auto
  Format format = Format::json;
  std::optional<std::string> cache_dir;
  unsigned parallelism = 1;
};

enum ExitCode : int { computed = 0, input_error = 2, internal_error = 3 };

// Command-specific results: the cacheable "result" part of a report.
nlohmann::json check_result(const GradedPoset& p, const RunConfig& config);
nlohmann::json betti_result(const GradedPoset& p, bool coring_side, const RunConfig& config);
nlohmann::json shriek_result(const GradedPoset& p, const RunConfig& config);
nlohmann::json dual_result(const GradedPoset& p, const RunConfig& config);
nlohmann::json corpus_result(std::size_t min_elements, std::size_t max_elements,
                             const RunConfig& config);

// Renderings derived from a finished report.
std::string render_text(const nlohmann::json& report);
std::string render_csv(const nlohmann::json& report);

// SHA-256 as lowercase hex.
std::string sha256_hex(const std::string& bytes);

// Parses argv (without the program name) and runs one subcommand.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace koszul::cli
