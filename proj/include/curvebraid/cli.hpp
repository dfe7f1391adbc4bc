#pragma once
// Batch front end: parse a curve, run the engine and/or the numeric oracle,
// emit a text or JSON report and optional SVG diagrams.  Exit status: 0 on
// success, 1 on unusable input, 2 on a violated curve condition, 3 when the
// numerics fail or the two routes disagree.

#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "curvebraid/engine.hpp"
#include "curvebraid/io.hpp"
#include "curvebraid/oracle.hpp"
#include "curvebraid/render.hpp"

namespace cb {

struct RunConfig {
  std::string input;           // polynomial text, or a path to a file holding it
  std::string mode = "engine";  // engine | oracle | both
  double precision = 1e-10;
  std::string format = "text";  // text | json
  std::string svg_dir;          // empty: no diagrams
  double radius_scale = 1.0;    // shrink factor for all chart disk radii
  bool verify = false;
};

// Shrinks (or grows) every chart disk; factors below one keep the chart valid.
inline void scale_chart_radii(CurveAnalysis& an, double s) {
  for (auto& p : an.chart.n_points) p.alpha *= s;
  for (auto& b : an.chart.b_points) b.delta *= s;
}

namespace detail {

inline std::string read_input(const std::string& input) {
  std::error_code ec;
  if (!std::filesystem::is_regular_file(input, ec)) return input;
  std::ifstream in(input);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

inline void write_diagrams(const std::string& dir, const CurveAnalysis& an) {
  std::filesystem::create_directories(dir);
  std::ofstream(std::filesystem::path(dir) / "chart.svg") << svg_of_chart(an);
  std::vector<int> gap = gap_profile(an);
  for (std::size_t j = 0; j < an.singular.size(); ++j)
    std::ofstream(std::filesystem::path(dir) / ("skeleton_" + std::to_string(j + 1) + ".svg"))
        << svg_of_skeleton(an.singular[j], an.curve.n, gap[j]);
}

inline void entry_line(std::ostream& out, const FactorEntry& e) {
  out << "  " << e.j << "  x=" << decimal12(e.x) << "  " << to_string(e.rec.type) << "("
      << e.rec.k << "," << e.rec.l << ")";
  if (e.rec.type == SingType::c) out << " m=" << e.rec.m;
  if (e.rec.nu > 0) out << " nu=" << e.rec.nu;
  if (e.rec.mirror) out << " mirrored";
  out << "  " << format_word(e.braid) << "\n";
}

}  // namespace detail

inline int run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  bool want_engine = cfg.mode == "engine" || cfg.mode == "both";
  bool want_oracle = cfg.mode == "oracle" || cfg.mode == "both";
  if (!want_engine && !want_oracle) {
    err << "unknown mode '" << cfg.mode << "'\n";
    return 1;
  }
  try {
    std::string text = detail::read_input(cfg.input);
    BPoly poly = parse_poly(text);
    AnalysisOptions opt;
    opt.precision = cfg.precision;
    CurveAnalysis an = analyze_curve(poly, opt);
    if (cfg.radius_scale != 1.0) scale_chart_radii(an, cfg.radius_scale);

    std::optional<Factorization> fac;
    std::optional<OracleFactorization> ofac;
    if (want_engine) fac = braid_monodromy(an);
    if (want_oracle) ofac = oracle_factorization(an.curve, an.chart);

    bool all_equal = true;
    std::vector<bool> agree;
    if (want_engine && want_oracle) {
      for (std::size_t i = 0; i < fac->entries.size(); ++i) {
        agree.push_back(equivalent(fac->entries[i].braid, ofac->entries[i].word));
        all_equal = all_equal && agree.back();
      }
    }
    VerifyReport rep;
    if (cfg.verify && fac) rep = verify_factorization(*fac, an.curve, want_oracle);
    if (!cfg.svg_dir.empty()) detail::write_diagrams(cfg.svg_dir, an);

    if (cfg.format == "json") {
      nlohmann::json j = fac ? json_of_factorization(*fac, text)
                             : json_of_oracle(*ofac, an.curve.n);
      if (!fac) j["curve"] = text;
      if (fac && ofac) {
        j["oracle"] = json_of_oracle(*ofac, an.curve.n);
        j["comparison"] = agree;
        j["all_equal"] = all_equal;
      }
      if (cfg.verify && fac) j["verification"] = json_of_report(rep);
      out << j.dump(2) << "\n";
    } else {
      out << "curve: " << text << "\n";
      out << "strands: " << an.curve.n << "  column: " << (fac ? fac->base_d : 0)
          << "  base x: " << decimal12(an.chart.x0) << "\n";
      if (fac) {
        out << "entries:\n";
        for (const FactorEntry& e : fac->entries) detail::entry_line(out, e);
      }
      if (ofac) {
        out << "oracle entries:\n";
        for (std::size_t i = 0; i < ofac->entries.size(); ++i)
          out << "  " << i + 1 << "  x=" << decimal12(ofac->entries[i].x) << "  "
              << format_word(ofac->entries[i].word) << "\n";
      }
      if (fac && ofac) {
        out << "comparison:";
        for (std::size_t i = 0; i < agree.size(); ++i)
          out << "  " << i + 1 << ":" << (agree[i] ? "equal" : "DIFFERENT");
        out << "\n";
      }
      if (cfg.verify && fac) {
        out << "verification: " << (rep.ok() ? "passed" : "FAILED");
        out << " (permutations " << (rep.permutations_ok ? "ok" : "bad") << ", exponents "
            << (rep.exponents_ok ? "ok" : "bad") << " total " << rep.exponent_total
            << ", product " << (rep.product_ok ? "ok" : "bad") << ")\n";
        if (!rep.ok()) out << "  " << rep.detail << "\n";
      }
    }
    if (!all_equal) {
      err << "engine and oracle disagree\n";
      return 3;
    }
    if (cfg.verify && fac && !rep.ok()) {
      err << "verification failed: " << rep.detail << "\n";
      return 3;
    }
    return 0;
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << "\n";
    return 1;
  } catch (const DegenerateCurveError& e) {
    err << "curve condition violated: " << e.what() << "\n";
    return 2;
  } catch (const GenericityError& e) {
    err << "curve condition violated: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "numeric failure: " << e.what() << "\n";
    return 3;
  }
}

}  // namespace cb
