#include <iomanip>
#include <sstream>

#include "koszul/cli.hpp"
#include "koszul/errors.hpp"

namespace koszul::cli {

using nlohmann::json;

namespace {

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) out += c == '"' ? std::string("\"\"") : std::string(1, c);
  return out + "\"";
}

std::string scalar(const json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_null()) return "none";
  return v.dump();
}

// Leaves of a JSON value as (pointer, value) pairs.
void flatten(const json& v, const std::string& path, std::vector<std::pair<std::string, std::string>>& out) {
  if (v.is_object()) {
    for (auto it = v.begin(); it != v.end(); ++it) flatten(it.value(), path + "/" + it.key(), out);
  } else if (v.is_array()) {
    for (std::size_t i = 0; i < v.size(); ++i) flatten(v[i], path + "/" + std::to_string(i), out);
  } else {
    out.emplace_back(path, scalar(v));
  }
}

std::string yes(const json& v) { return v.get<bool>() ? "true" : "false"; }

void criteria_text(std::ostream& out, const json& verdict) {
  for (const auto& c : verdict["criteria"]) {
    std::string id = c["id"].get<std::string>();
    if (!c["vote"].get<bool>()) id += " (check)";
    out << "  " << std::left << std::setw(24) << id << (c["pass"].get<bool>() ? "pass  " : "fail  ")
        << c["evidence"].get<std::string>() << "\n";
  }
}

std::string word(const json& w) {
  std::string s;
  for (std::size_t i = 0; i < w.size(); ++i) s += (i ? "⊗" : "") + w[i].get<std::string>();
  return s;
}

std::string sum(const json& terms) {
  std::string s;
  for (std::size_t i = 0; i < terms.size(); ++i) {
    std::string c = terms[i]["coefficient"].get<std::string>();
    const bool neg = !c.empty() && c[0] == '-';
    if (neg) c = c.substr(1);
    s += i ? (neg ? " - " : " + ") : (neg ? "-" : "");
    if (c != "1") s += c + "·";
    s += word(terms[i]["word"]);
  }
  return s.empty() ? "0" : s;
}

void table_text(std::ostream& out, const json& r) {
  out << (r["kind"] == "tor" ? "Tor" : "Ext") << " (" << r["side"].get<std::string>()
      << " side), rows n, columns m\n";
  out << std::left << std::setw(5) << "n\\m";
  for (std::size_t m = 0; m <= r["m_max"].get<std::size_t>(); ++m) out << std::setw(5) << m;
  out << "\n";
  for (std::size_t n = 0; n < r["rows"].size(); ++n) {
    out << std::setw(5) << n;
    for (const auto& x : r["rows"][n]) out << std::setw(5) << x.get<std::size_t>();
    out << "\n";
  }
  out << "diagonal: " << yes(r["diagonal"]) << "\n";
}

}  // namespace

std::string render_text(const json& report) {
  std::ostringstream out;
  const std::string cmd = report["command"].get<std::string>();
  const json& r = report["result"];
  if (cmd == "check") {
    out << "koszul: " << yes(r["koszul"]) << "\n";
    out << "sound: " << yes(r["sound"]) << "\n";
    out << "weight bound: " << r["m_bound_used"].get<std::size_t>() << "\n";
    out << "witness weight: " << scalar(r["witness_weight"]) << "\n";
    out << "ring criteria:\n";
    criteria_text(out, r["ring"]);
    out << "coring criteria:\n";
    criteria_text(out, r["coring"]);
    out << "duality:\n";
    out << "  dual ≅ incidence coring: " << yes(r["duality"]["dual_of_ring_is_incidence_coring"]) << "\n";
    out << "  dual ≅ incidence ring: " << yes(r["duality"]["dual_of_coring_is_incidence_ring"]) << "\n";
    out << "  double dual (ring): " << yes(r["duality"]["double_dual_ring"]) << "\n";
    out << "  double dual (coring): " << yes(r["duality"]["double_dual_coring"]) << "\n";
    out << "  dual pair Koszul: " << yes(r["duality"]["dual_pair_koszul"]) << "\n";
  } else if (cmd == "betti") {
    table_text(out, r);
  } else if (cmd == "shriek") {
    for (const auto& g : r["generators"]) {
      out << "ζ_{" << g["interval"][0].get<std::string>() << "," << g["interval"][1].get<std::string>()
          << "} = " << sum(g["terms"]) << "\n";
    }
    for (const auto& rel : r["shriek_coring_relations"]) out << "A^!_2 ∋ " << sum(rel) << "\n";
    out << "A^! dims:";
    for (const auto& d : r["shriek_coring_dims"]) out << " " << d.get<std::size_t>();
    out << "\nzeta ring dims:";
    for (const auto& d : r["zeta_ring_dims"]) out << " " << d.get<std::size_t>();
    out << "\nzeta ring = shriek of the incidence coring: " << yes(r["zeta_ring_is_shriek_of_coring"]) << "\n";
  } else if (cmd == "dual") {
    out << "dual ≅ incidence coring: " << yes(r["dual_of_ring_is_incidence_coring"]) << "\n";
    out << "dual ≅ incidence ring: " << yes(r["dual_of_coring_is_incidence_ring"]) << "\n";
    out << "right dual ≅ incidence coring: " << yes(r["right_dual_of_ring_is_incidence_coring"]) << "\n";
    out << "double dual (ring): " << yes(r["double_dual_ring"]) << "\n";
    out << "double dual (coring): " << yes(r["double_dual_coring"]) << "\n";
    out << "dual pair almost-Koszul: " << yes(r["dual_pair_almost_koszul"]) << "\n";
    out << "pair Koszul: " << yes(r["pair_koszul"]) << ", dual pair Koszul: " << yes(r["dual_pair_koszul"])
        << "\n";
  } else if (cmd == "corpus") {
    std::size_t i = 0;
    for (const auto& row : r["posets"]) {
      out << "#" << i++ << " elements=" << row["elements"].get<std::size_t>()
          << " L=" << row["max_length"].get<std::size_t>() << " koszul=" << scalar(row["koszul"])
          << " witness=" << scalar(row["witness_weight"]) << " " << row["canonical_form"].get<std::string>()
          << "\n";
    }
    const json& s = r["summary"];
    out << "posets: " << s["count"].get<std::size_t>() << ", koszul: " << s["koszul"].get<std::size_t>()
        << ", disagreements: " << s["disagreements"].get<std::size_t>()
        << ", agreement = " << s["agreement_percent"].get<std::size_t>() << "%\n";
  } else {
    throw InputError("unknown command " + cmd);
  }
  return out.str();
}

std::string render_csv(const json& report) {
  std::ostringstream out;
  const std::string cmd = report["command"].get<std::string>();
  const json& r = report["result"];
  if (cmd == "betti") {
    out << "n\\m";
    for (std::size_t m = 0; m <= r["m_max"].get<std::size_t>(); ++m) out << "," << m;
    out << "\n";
    for (std::size_t n = 0; n < r["rows"].size(); ++n) {
      out << n;
      for (const auto& x : r["rows"][n]) out << "," << x.get<std::size_t>();
      out << "\n";
    }
  } else if (cmd == "corpus") {
    out << "index,elements,max_length,koszul,witness_weight,criteria_agree,canonical_form\n";
    std::size_t i = 0;
    for (const auto& row : r["posets"]) {
      out << i++ << "," << row["elements"].get<std::size_t>() << "," << row["max_length"].get<std::size_t>()
          << "," << scalar(row["koszul"]) << "," << scalar(row["witness_weight"]) << ","
          << scalar(row["criteria_agree"]) << "," << csv_field(row["canonical_form"].get<std::string>())
          << "\n";
    }
  } else {
    std::vector<std::pair<std::string, std::string>> leaves;
    flatten(r, "", leaves);
    out << "key,value\n";
    for (const auto& [k, v] : leaves) out << csv_field(k) << "," << csv_field(v) << "\n";
  }
  return out.str();
}

}  // namespace koszul::cli
