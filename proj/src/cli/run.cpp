#include <chrono>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <thread>

#include <openssl/evp.h>

#include "CLI11.hpp"
#include "koszul/cli.hpp"
#include "koszul/errors.hpp"

#ifndef KOSZUL_VERSION
#define KOSZUL_VERSION "0.0.0"
#endif

namespace koszul::cli {

using nlohmann::json;

std::string sha256_hex(const std::string& bytes) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), digest, &len, EVP_sha256(), nullptr) != 1) {
    throw InternalError("SHA-256 failed");
  }
  std::ostringstream out;
  for (unsigned int i = 0; i < len; ++i) {
    out << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(digest[i]);
  }
  return out.str();
}

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t).count();
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::optional<std::size_t> parse_max_weight(const std::string& text) {
  if (text == "auto") return std::nullopt;
  std::size_t pos = 0;
  unsigned long v = 0;
  try {
    v = std::stoul(text, &pos);
  } catch (const std::exception&) {
    pos = 0;
  }
  if (pos == 0 || pos != text.size() || text[0] == '-') {
    throw InputError("--max-weight expects a non-negative integer or auto, got " + text);
  }
  return v;
}

Format parse_format(const std::string& text) {
  if (text == "json") return Format::json;
  if (text == "csv") return Format::csv;
  if (text == "text") return Format::text;
  throw InputError("--format expects json, csv or text, got " + text);
}

// Only the "result" part is cached; input and config are recomputed.
class Cache {
 public:
  explicit Cache(std::optional<std::string> dir) : dir_(std::move(dir)) {}

  bool enabled() const { return dir_.has_value(); }

  std::optional<json> load(const std::string& key) const {
    if (!dir_) return std::nullopt;
    std::ifstream in(path(key));
    if (!in) return std::nullopt;
    try {
      return json::parse(in);
    } catch (const json::exception&) {
      return std::nullopt;  // a damaged entry is recomputed and overwritten
    }
  }

  void store(const std::string& key, const json& result) const {
    if (!dir_) return;
    std::error_code ec;
    std::filesystem::create_directories(*dir_, ec);
    if (ec) throw InputError("cannot create cache directory " + *dir_ + ": " + ec.message());
    const std::string final_path = path(key);
    const std::string tmp = final_path + ".tmp";
    {
      std::ofstream out(tmp);
      if (!out) throw InputError("cannot write to cache directory " + *dir_);
      out << result.dump();
    }
    std::filesystem::rename(tmp, final_path, ec);
    if (ec) throw InputError("cannot update cache entry " + final_path + ": " + ec.message());
  }

 private:
  std::string path(const std::string& key) const { return *dir_ + "/" + key + ".json"; }
  std::optional<std::string> dir_;
};

struct Options {
  std::string poset_path;
  std::string field = "rational";
  std::string max_weight = "auto";
  std::string format = "json";
  std::string cache_dir;
  unsigned jobs = 0;
  std::string side = "ring";
  std::size_t min_elements = 1;
  std::size_t max_elements = 5;
};

json config_json(const std::string& command, const RunConfig& config, const Options& o) {
  json c;
  c["field"] = config.field.to_string();
  c["max_weight"] = config.m_max_override ? json(*config.m_max_override) : json("auto");
  if (command == "betti") c["side"] = o.side;
  if (command == "corpus") {
    c["min_elements"] = o.min_elements;
    c["max_elements"] = o.max_elements;
  }
  return c;
}

int execute(const std::string& command, const Options& o, std::ostream& out) {
  const auto start = Clock::now();
  RunConfig config;
  config.field = FieldSpec::parse(o.field);
  config.m_max_override = parse_max_weight(o.max_weight);
  config.format = parse_format(o.format);
  if (!o.cache_dir.empty()) config.cache_dir = o.cache_dir;
  config.parallelism = o.jobs ? o.jobs : std::max(1u, std::thread::hardware_concurrency());
  if (command == "betti" && o.side != "ring" && o.side != "coring") {
    throw InputError("--side expects ring or coring, got " + o.side);
  }

  json report;
  report["schema"] = kSchema;
  report["version"] = KOSZUL_VERSION;
  report["command"] = command;
  report["config"] = config_json(command, config, o);

  GradedPoset poset;
  std::string key_material = std::string(kSchema) + "|" + KOSZUL_VERSION + "|" + command + "|" +
                             report["config"].dump();
  if (command == "corpus") {
    if (o.min_elements < 1 || o.min_elements > o.max_elements) {
      throw InputError("need 1 ≤ --min-elements ≤ --max-elements");
    }
    report["input"] = {{"min_elements", o.min_elements}, {"max_elements", o.max_elements}};
  } else {
    if (o.poset_path.empty()) throw InputError(command + " needs --poset FILE");
    const std::string bytes = read_file(o.poset_path);
    poset = parse_poset(bytes);
    const std::string form = canonical_form(poset);
    report["input"] = {{"digest", "sha256:" + sha256_hex(bytes)},
                       {"canonical_form", form},
                       {"elements", poset.size()},
                       {"max_length", poset.max_length()}};
    key_material += "|" + form;
    // Shriek presentations name the elements, so relabelings must not share entries.
    if (command == "shriek") key_material += "|" + poset_to_json(poset);
  }

  const Cache cache(config.cache_dir);
  const std::string key = sha256_hex(key_material);
  const auto compute_start = Clock::now();
  std::string cache_state = cache.enabled() ? "miss" : "off";
  json result;
  if (auto hit = cache.load(key)) {
    result = std::move(*hit);
    cache_state = "hit";
  } else {
    if (command == "check") result = check_result(poset, config);
    else if (command == "betti") result = betti_result(poset, o.side == "coring", config);
    else if (command == "shriek") result = shriek_result(poset, config);
    else if (command == "dual") result = dual_result(poset, config);
    else result = corpus_result(o.min_elements, o.max_elements, config);
    cache.store(key, result);
  }
  const double compute_ms = ms_since(compute_start);
  report["result"] = result;
  report["run"] = {{"jobs", config.parallelism},
                   {"cache", cache_state},
                   {"timings_ms", {{"compute", compute_ms}, {"total", ms_since(start)}}}};

  switch (config.format) {
    case Format::json: out << report.dump(2) << "\n"; break;
    case Format::csv: out << render_csv(report); break;
    case Format::text: out << render_text(report); break;
  }
  if (command == "corpus" && result["summary"]["disagreements"].get<std::size_t>() > 0) {
    return internal_error;
  }
  return computed;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Koszulity of graded posets, their incidence rings and corings"};
  app.require_subcommand(1);
  app.fallthrough();
  Options o;
  app.add_option("--poset", o.poset_path, "poset JSON file");
  app.add_option("--field", o.field, "rational | fp:P")->capture_default_str();
  app.add_option("--max-weight", o.max_weight, "N | auto")->capture_default_str();
  app.add_option("--format", o.format, "json | csv | text")->capture_default_str();
  app.add_option("--cache", o.cache_dir, "cache directory");
  app.add_option("--jobs", o.jobs, "worker threads (default: all cores)")
      ->check(CLI::PositiveNumber);

  auto* check = app.add_subcommand("check", "decide Koszulity, all criteria, duality checks");
  auto* betti = app.add_subcommand("betti", "Tor or Ext Betti table");
  betti->add_option("--side", o.side, "ring | coring")->capture_default_str();
  auto* shriek = app.add_subcommand("shriek", "ζ generators and quadratic duals");
  auto* dual = app.add_subcommand("dual", "graded duals and the incidence isomorphisms");
  auto* corpus = app.add_subcommand("corpus", "sweep all graded posets in a size range");
  corpus->add_option("--min-elements", o.min_elements)->capture_default_str();
  corpus->add_option("--max-elements", o.max_elements)->capture_default_str();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return computed;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return computed;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return input_error;
  }

  std::string command;
  for (auto* sub : {check, betti, shriek, dual, corpus})
    if (sub->parsed()) command = sub->get_name();

  try {
    return execute(command, o, out);
  } catch (const InputError& e) {
    err << "input error: " << e.what() << "\n";
    return input_error;
  } catch (const PreconditionError& e) {
    err << "input error: " << e.what() << "\n";
    return input_error;
  } catch (const InternalError& e) {
    err << "internal error: " << e.what() << "\n";
    return internal_error;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return internal_error;
  }
}

}  // namespace koszul::cli
