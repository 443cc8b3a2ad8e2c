#include "roblev/report.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "roblev/error.hpp"
#include "roblev/version.hpp"

namespace roblev {

std::optional<ReportFormat> parse_report_format(std::string_view name) {
  if (name == "csv") return ReportFormat::csv;
  if (name == "json") return ReportFormat::json;
  return std::nullopt;
}

std::string format_number(double v) {
  if (v == 0.0) v = 0.0;  // no "-0"
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

namespace {

std::string join(const std::vector<std::string>& v, char sep) {
  std::string out;
  for (std::size_t k = 0; k < v.size(); ++k) {
    if (k) out += sep;
    out += v[k];
  }
  return out;
}

// Invalid UTF-8 from data cells is replaced rather than rejected.
std::string quoted(const std::string& s) {
  return nlohmann::json(s).dump(-1, ' ', false, nlohmann::json::error_handler_t::replace);
}

std::string json_list(const std::vector<std::string>& v) {
  std::string out = "[";
  for (std::size_t k = 0; k < v.size(); ++k) {
    if (k) out += ", ";
    out += quoted(v[k]);
  }
  return out + "]";
}

// Ordered (key, already-rendered JSON value) pairs shared by both formats.
struct MetaEntry {
  std::string key;
  std::string text;  // CSV comment rendering
  std::string json;  // JSON rendering
};

std::vector<MetaEntry> meta_entries(const ReportHeader& h) {
  auto num = [](double v) { return format_number(v); };
  auto count = [](std::size_t v) { return std::to_string(v); };
  auto flag = [](bool b) { return std::string(b ? "true" : "false"); };
  return {
      {"version", kVersion, quoted(kVersion)},
      {"formula", h.formula, quoted(h.formula)},
      {"n", count(h.n), count(h.n)},
      {"p", count(h.p), count(h.p)},
      {"p1", count(h.p1), count(h.p1)},
      {"p2", count(h.p2), count(h.p2)},
      {"p3", count(h.p3), count(h.p3)},
      {"columns", join(h.columns, ','), json_list(h.columns)},
      {"blocks", join(h.blocks, ','), json_list(h.blocks)},
      {"h", count(h.h), count(h.h)},
      {"sum_w", num(h.sum_w), num(h.sum_w)},
      {"c", num(h.c), num(h.c)},
      {"seed", std::to_string(h.seed), std::to_string(h.seed)},
      {"alpha", num(h.alpha), num(h.alpha)},
      {"n_trials", count(h.n_trials), count(h.n_trials)},
      {"reweight_prob", num(h.reweight_prob), num(h.reweight_prob)},
      {"small_sample_correction", flag(h.small_sample), flag(h.small_sample)},
      {"enumerated", flag(h.enumerated), flag(h.enumerated)},
      {"flag_cutoff", num(h.flag_cutoff), num(h.flag_cutoff)},
  };
}

}  // namespace

void write_csv(const LeverageReport& report, std::ostream& out) {
  for (const auto& e : meta_entries(report.header)) out << "# " << e.key << ": " << e.text << '\n';
  out << "obs,robust_hat,robust_rd,classical_hat,classical_md,mcd_weight,flagged\n";
  for (const auto& r : report.rows) {
    out << r.obs << ',' << format_number(r.robust_hat) << ',' << format_number(r.robust_rd) << ','
        << format_number(r.classical_hat) << ',' << format_number(r.classical_md) << ','
        << r.mcd_weight << ',' << (r.flagged ? 1 : 0) << '\n';
  }
}

void write_json(const LeverageReport& report, std::ostream& out) {
  out << "{\n  \"meta\": {\n";
  const auto meta = meta_entries(report.header);
  for (std::size_t k = 0; k < meta.size(); ++k) {
    out << "    " << quoted(meta[k].key) << ": " << meta[k].json
        << (k + 1 < meta.size() ? ",\n" : "\n");
  }
  out << "  },\n  \"observations\": [";
  for (std::size_t k = 0; k < report.rows.size(); ++k) {
    const auto& r = report.rows[k];
    out << (k ? ",\n    " : "\n    ") << "{\"obs\": " << r.obs
        << ", \"robust_hat\": " << format_number(r.robust_hat)
        << ", \"robust_rd\": " << format_number(r.robust_rd)
        << ", \"classical_hat\": " << format_number(r.classical_hat)
        << ", \"classical_md\": " << format_number(r.classical_md)
        << ", \"mcd_weight\": " << r.mcd_weight << ", \"flagged\": " << (r.flagged ? 1 : 0)
        << "}";
  }
  out << (report.rows.empty() ? "]\n}\n" : "\n  ]\n}\n");
}

void write_report(const LeverageReport& report, ReportFormat format, std::ostream& out) {
  if (format == ReportFormat::csv) {
    write_csv(report, out);
  } else {
    write_json(report, out);
  }
}

void emit_report(const LeverageReport& report, ReportFormat format, const std::string& dest,
                 std::ostream& fallback) {
  if (dest.empty() || dest == "-") {
    write_report(report, format, fallback);
    fallback.flush();
    if (!fallback) throw OutputError("failed to write report to standard output");
    return;
  }
  std::ofstream file(dest, std::ios::binary | std::ios::trunc);
  if (!file) throw OutputError("cannot open output file '" + dest + "'");
  write_report(report, format, file);
  file.close();
  if (!file) throw OutputError("failed writing output file '" + dest + "'");
}

}  // namespace roblev
