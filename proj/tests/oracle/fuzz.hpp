#pragma once

// Malformed and borderline CSV/formula inputs for the command-line front end.

#include <cmath>
#include <sstream>
#include <string>
#include <vector>

#include "oracle/random.hpp"

namespace oracle {

struct FuzzCase {
  std::string csv;
  std::string formula;
  std::vector<std::string> extra_args;
};

inline std::string fuzz_cell(Gen& g) {
  switch (g.index(0, 14)) {
    case 0: return "";
    case 1: return "NA";
    case 2: return "\"quoted, cell\"";
    case 3: return "\"unterminated";
    case 4: return "1e308";
    case 5: return "-1e-308";
    case 6: return "inf";
    case 7: return "nan";
    case 8: return "abc";
    case 9: return "0";
    case 10: return "\"a\"\"b\"";
    case 11: return std::string(1, static_cast<char>(g.index(1, 255)));
    default: {
      std::ostringstream s;
      s.precision(17);
      s << g.normal() * std::pow(10.0, static_cast<double>(g.index(0, 6)) - 3.0);
      return s.str();
    }
  }
}

inline std::string fuzz_formula(Gen& g, const std::vector<std::string>& names) {
  static const std::vector<std::string> ops{" + ", " * ", ":", " - ", " ~ ", " & ", "(", ")",
                                            " ", "+", "-1", " 0", " 1", "`", "^2"};
  std::string f = g.coin(0.9) ? "~ " : "";
  const std::size_t parts = g.index(0, 6);
  for (std::size_t i = 0; i < parts; ++i) {
    if (g.coin(0.7) && !names.empty()) {
      f += names[g.index(0, names.size() - 1)];
    } else if (g.coin(0.5)) {
      f += "unknown" + std::to_string(i);
    }
    if (i + 1 < parts) f += g.coin(0.75) ? (g.coin() ? " + " : " * ") : ops[g.index(0, ops.size() - 1)];
  }
  return f;
}

inline FuzzCase fuzz_case(Gen& g) {
  FuzzCase fc;
  const std::size_t cols = g.index(1, 5);
  const std::size_t rows = g.index(0, 30);
  std::vector<std::string> names;
  std::ostringstream s;
  for (std::size_t j = 0; j < cols; ++j) {
    std::string name = g.coin(0.05) ? "" : "v" + std::to_string(g.coin(0.1) ? 0 : j);
    names.push_back(name);
    s << (j ? "," : "") << name;
  }
  s << (g.coin(0.2) ? "\r\n" : "\n");
  // Column styles: numeric, low-cardinality label, constant, collinear copy.
  std::vector<std::size_t> style(cols);
  for (auto& st : style) st = g.index(0, 3);
  for (std::size_t i = 0; i < rows; ++i) {
    std::size_t width = cols;
    if (g.coin(0.04)) width = g.index(0, cols + 2);
    double first = 0.0;
    for (std::size_t j = 0; j < width; ++j) {
      if (j) s << ",";
      if (g.coin(0.08)) {
        s << fuzz_cell(g);
        continue;
      }
      const std::size_t st = j < cols ? style[j] : 0;
      if (st == 0) {
        const double v = g.normal() * 10.0;
        if (j == 0) first = v;
        s << v;
      } else if (st == 1) {
        s << (g.coin() ? "ctl" : "trt");
      } else if (st == 2) {
        s << 3.5;
      } else {
        s << 2.0 * first;
      }
    }
    s << "\n";
  }
  if (g.coin(0.05)) s.str(std::string());  // empty file
  fc.csv = s.str();
  fc.formula = fuzz_formula(g, names);

  static const std::vector<std::vector<std::string>> extras{
      {}, {}, {}, {"--format", "json"}, {"--alpha", "0.75"}, {"--alpha", "1"},
      {"--alpha", "0.2"}, {"--ntrials", "3"}, {"--reweight-prob", "0.5"},
      {"--no-small-sample"}, {"--c-override", "1"}, {"--c-override", "-2"},
      {"--flag-cutoff", "0.5"}, {"--seed", "12345"}, {"--format", "xml"},
      {"--bogus"}, {"--categorical", "v1,v2"}, {"--categorical", "nope"},
      {"--threads", "3"}, {"--ntrials", "abc"}};
  fc.extra_args = extras[g.index(0, extras.size() - 1)];
  return fc;
}

}  // namespace oracle
