#pragma once
// JSON reports: factorizations, oracle runs and verification results are
// emitted with braid words in the same syntax parse_word accepts, so a report
// can be read back, renormalized and re-emitted without loss.

#include <cstdio>
#include <string>
#include <vector>

#include "curvebraid/braid.hpp"
#include "curvebraid/engine.hpp"
#include "curvebraid/garside.hpp"
#include "curvebraid/oracle.hpp"
#include "json.hpp"

namespace cb {

// 12 significant digits, enough to reproduce every chart abscissa exactly in
// the tested range while keeping reports readable.
inline std::string decimal12(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

inline nlohmann::json json_of_entry(const FactorEntry& e) {
  nlohmann::json j;
  j["j"] = e.j;
  j["x"] = decimal12(e.x);
  j["type"] = to_string(e.rec.type);
  j["k"] = e.rec.k;
  j["l"] = e.rec.l;
  if (e.rec.type == SingType::c) j["m"] = e.rec.m;
  if (e.rec.nu > 0) j["nu"] = e.rec.nu;
  if (e.rec.mirror) j["mirror"] = true;
  j["valuation"] = e.rec.valuation;
  j["word"] = format_word(e.braid);
  return j;
}

inline nlohmann::json json_of_factorization(const Factorization& f, const std::string& curve) {
  nlohmann::json j;
  j["curve"] = curve;
  j["strands"] = f.n;
  j["column"] = f.base_d;
  j["base_x"] = decimal12(f.chart.x0);
  j["entries"] = nlohmann::json::array();
  for (const FactorEntry& e : f.entries) j["entries"].push_back(json_of_entry(e));
  j["b_points"] = nlohmann::json::array();
  for (const ChartBPoint& b : f.chart.b_points) {
    nlohmann::json jb;
    jb["x"] = decimal12(b.rec.x);
    jb["k"] = b.rec.k;
    jb["l"] = b.rec.l;
    jb["orientation"] = b.rec.orientation;
    j["b_points"].push_back(jb);
  }
  return j;
}

inline nlohmann::json json_of_oracle(const OracleFactorization& f, int strands) {
  nlohmann::json j;
  j["strands"] = strands;
  j["entries"] = nlohmann::json::array();
  for (const OracleEntry& e : f.entries) {
    nlohmann::json je;
    je["x"] = decimal12(e.x);
    je["word"] = format_word(e.word);
    j["entries"].push_back(je);
  }
  return j;
}

inline nlohmann::json json_of_report(const VerifyReport& r) {
  nlohmann::json j;
  j["permutations_ok"] = r.permutations_ok;
  j["exponents_ok"] = r.exponents_ok;
  j["product_ok"] = r.product_ok;
  j["oracle_checked"] = r.oracle_checked;
  j["exponent_total"] = r.exponent_total;
  if (!r.detail.empty()) j["detail"] = r.detail;
  return j;
}

// Reads the entry words of an emitted report back into braid words.
inline std::vector<BraidWord> words_of_json(const nlohmann::json& j) {
  int strands = j.at("strands").get<int>();
  std::vector<BraidWord> out;
  for (const nlohmann::json& e : j.at("entries"))
    out.push_back(parse_word(e.at("word").get<std::string>(), strands));
  return out;
}

// Replaces every entry word by its left greedy normal form; a second pass
// over the result is the identity.
inline nlohmann::json renormalized(nlohmann::json j) {
  int strands = j.at("strands").get<int>();
  for (nlohmann::json& e : j.at("entries")) {
    BraidWord w = parse_word(e.at("word").get<std::string>(), strands);
    e["word"] = format_word(to_word(normal_form(w)));
  }
  return j;
}

}  // namespace cb
