#pragma once

// Built-in example problems, their reference eigenpairs, and the plain-text
// tensor format.
//
// Tensor text format:
//
//     symtensor <m> <n>
//     unique | dense
//     <body>
//
// A `unique` body lists one entry per line as `i1 ... im value` with 1-based,
// nondecreasing indices; the value is copied to every permutation and
// unlisted entries are zero. A `dense` body holds all n^m values in row-major
// order, whitespace separated. `#` starts a comment that runs to the end of
// the line.

#include <algorithm>
#include <array>
#include <cstdio>
#include <fstream>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "teneig/dense.hpp"
#include "teneig/error.hpp"
#include "teneig/geap.hpp"
#include "teneig/symtensor.hpp"

namespace teneig {

// ---------------------------------------------------------------------------
// Text format

namespace detail {

inline std::string strip_comment(const std::string& line) {
  const auto hash = line.find('#');
  return hash == std::string::npos ? line : line.substr(0, hash);
}

inline bool blank(const std::string& s) {
  return std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c); });
}

inline double parse_double(const std::string& tok, std::size_t line) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(tok, &used);
  } catch (const std::exception&) {
    throw ParseError("not a number: '" + tok + "'", line);
  }
  if (used != tok.size() || !std::isfinite(v)) {
    throw ParseError("not a finite number: '" + tok + "'", line);
  }
  return v;
}

inline std::size_t parse_index(const std::string& tok, std::size_t line) {
  if (tok.empty() || !std::all_of(tok.begin(), tok.end(), [](unsigned char c) { return std::isdigit(c); })) {
    throw ParseError("not an index: '" + tok + "'", line);
  }
  return std::stoul(tok);
}

} // namespace detail

inline SymTensor read_tensor(std::istream& in) {
  std::string raw;
  std::size_t lineno = 0;
  auto next_line = [&](std::string& out) {
    while (std::getline(in, raw)) {
      ++lineno;
      out = detail::strip_comment(raw);
      if (!detail::blank(out)) {
        return true;
      }
    }
    return false;
  };

  std::string line;
  if (!next_line(line)) {
    throw ParseError("missing 'symtensor <m> <n>' header", std::max<std::size_t>(lineno, 1));
  }
  std::istringstream header(line);
  std::string magic;
  std::string m_tok;
  std::string n_tok;
  std::string extra;
  header >> magic >> m_tok >> n_tok;
  if (magic != "symtensor" || m_tok.empty() || n_tok.empty() || (header >> extra)) {
    throw ParseError("expected 'symtensor <m> <n>'", lineno);
  }
  const std::size_t m = detail::parse_index(m_tok, lineno);
  const std::size_t n = detail::parse_index(n_tok, lineno);
  std::size_t size = 0;
  try {
    size = detail::checked_size(m, n);
  } catch (const Error& e) {
    throw ParseError(e.what(), lineno);
  }
  const std::size_t header_line = lineno;

  if (!next_line(line)) {
    throw ParseError("missing 'unique' or 'dense' layout line", lineno);
  }
  std::istringstream layout_in(line);
  std::string layout;
  layout_in >> layout;
  if ((layout != "unique" && layout != "dense") || (layout_in >> extra)) {
    throw ParseError("expected 'unique' or 'dense', got '" + line + "'", lineno);
  }

  std::vector<double> values(size, 0.0);
  if (layout == "unique") {
    std::vector<bool> seen(size, false);
    std::vector<std::size_t> idx(m);
    while (next_line(line)) {
      std::istringstream row(line);
      std::vector<std::string> toks;
      for (std::string t; row >> t;) {
        toks.push_back(t);
      }
      if (toks.size() != m + 1) {
        throw ParseError("expected " + std::to_string(m) + " indices and a value", lineno);
      }
      for (std::size_t k = 0; k < m; ++k) {
        const std::size_t i = detail::parse_index(toks[k], lineno);
        if (i < 1 || i > n) {
          throw ParseError("index " + toks[k] + " out of range 1.." + std::to_string(n), lineno);
        }
        if (k > 0 && i - 1 < idx[k - 1]) {
          throw ParseError("indices must be nondecreasing", lineno);
        }
        idx[k] = i - 1;
      }
      const double v = detail::parse_double(toks[m], lineno);
      const std::size_t canon = detail::encode(idx, n);
      if (seen[canon]) {
        throw ParseError("duplicate entry", lineno);
      }
      seen[canon] = true;
      values[canon] = v;
    }
    const auto canon = detail::canonical_offsets(m, n, size);
    for (std::size_t off = 0; off < size; ++off) {
      values[off] = values[canon[off]];
    }
  } else {
    std::size_t count = 0;
    while (next_line(line)) {
      std::istringstream row(line);
      for (std::string t; row >> t;) {
        if (count == size) {
          throw ParseError("more than " + std::to_string(size) + " values in dense body", lineno);
        }
        values[count++] = detail::parse_double(t, lineno);
      }
    }
    if (count != size) {
      throw ParseError("dense body has " + std::to_string(count) + " values, expected " + std::to_string(size),
                       lineno);
    }
  }
  try {
    return SymTensor(m, n, std::move(values));
  } catch (const Error& e) {
    throw ParseError(e.what(), header_line);
  }
}

inline SymTensor parse_tensor(std::string_view text) {
  std::istringstream in{std::string(text)};
  return read_tensor(in);
}

/// Writes the `unique` layout with 17 significant digits, so reading the
/// output back reproduces every entry exactly.
inline void write_tensor(std::ostream& out, const SymTensor& t) {
  const std::size_t m = t.order();
  const std::size_t n = t.dim();
  out << "symtensor " << m << ' ' << n << "\nunique\n";
  std::vector<std::size_t> idx(m);
  char buf[64];
  for (std::size_t off = 0; off < t.size(); ++off) {
    detail::decode(off, n, idx);
    if (!std::is_sorted(idx.begin(), idx.end())) {
      continue;
    }
    const double v = t.values()[off];
    if (v == 0.0) {
      continue;
    }
    for (std::size_t i : idx) {
      out << (i + 1) << ' ';
    }
    std::snprintf(buf, sizeof buf, "%.17g", v);
    out << buf << '\n';
  }
}

inline SymTensor load_tensor(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw Error("cannot open tensor file '" + path + "'");
  }
  try {
    return read_tensor(in);
  } catch (const ParseError& e) {
    throw ParseError(e.detail(), e.line(), path);
  }
}

inline void save_tensor(const std::string& path, const SymTensor& t) {
  std::ofstream out(path);
  if (!out) {
    throw Error("cannot write tensor file '" + path + "'");
  }
  write_tensor(out, t);
  if (!out) {
    throw Error("error while writing '" + path + "'");
  }
}

/// A symmetric matrix stored as an order-2 tensor file.
inline SymMatrix load_matrix(const std::string& path) {
  const SymTensor t = load_tensor(path);
  if (t.order() != 2) {
    throw Error(path + ": expected an order-2 tensor for a matrix");
  }
  return SymMatrix(t.dim(), std::vector<double>(t.values().begin(), t.values().end()));
}

// ---------------------------------------------------------------------------
// Datasets

/// One row of a complete eigenpair listing, at printed (4-digit) precision.
struct FixtureEigenpair {
  double lambda = 0.0;
  Vector x;
  Classification classification = Classification::Degenerate;
  Vector projected;  ///< printed projected-Hessian eigenvalues, unordered
};

/// A row of a published multi-start summary.
struct ReferenceRow {
  int occurrences = 0;
  double lambda = 0.0;
  Vector x;
  int median_iters = 0;
};

struct ReferenceExperiment {
  int beta = 1;
  std::optional<double> fixed_alpha;  ///< empty for the adaptive shift
  int starts = 0;
  int failed = 0;
  std::vector<ReferenceRow> rows;
};

struct Dataset {
  std::string name;
  std::string description;
  ProblemSpec problem;  ///< beta = +1
  std::vector<FixtureEigenpair> fixtures;
  std::vector<ReferenceExperiment> experiments;

  ProblemSpec with_beta(int beta) const { return problem.with_beta(beta); }
};

namespace data {

inline constexpr std::string_view kKore02A = R"(symtensor 4 3
unique
1 1 1 1 0.2883
1 1 1 2 -0.0031
1 1 1 3 0.1973
1 1 2 2 -0.2485
1 1 2 3 -0.2939
1 1 3 3 0.3847
1 2 2 2 0.2972
1 2 2 3 0.1862
1 2 3 3 0.0919
1 3 3 3 -0.3619
2 2 2 2 0.1241
2 2 2 3 -0.3420
2 2 3 3 0.2127
2 3 3 3 0.2727
3 3 3 3 -0.3054
)";

inline constexpr std::string_view kRandomA = R"(symtensor 6 4
unique
1 1 1 1 1 1 0.2888
1 1 1 1 1 2 -0.0013
1 1 1 1 1 3 -0.1422
1 1 1 1 1 4 -0.0323
1 1 1 1 2 2 -0.1079
1 1 1 1 2 3 -0.0899
1 1 1 1 2 4 -0.2487
1 1 1 1 3 3 0.0231
1 1 1 1 3 4 -0.0106
1 1 1 1 4 4 0.0740
1 1 1 2 2 2 0.1490
1 1 1 2 2 3 0.0527
1 1 1 2 2 4 -0.0710
1 1 1 2 3 3 -0.1039
1 1 1 2 3 4 -0.0250
1 1 1 2 4 4 0.0169
1 1 1 3 3 3 0.2208
1 1 1 3 3 4 0.0662
1 1 1 3 4 4 0.0046
1 1 1 4 4 4 0.0943
1 1 2 2 2 2 -0.1144
1 1 2 2 2 3 -0.1295
1 1 2 2 2 4 -0.0484
1 1 2 2 3 3 0.0238
1 1 2 2 3 4 -0.0237
1 1 2 2 4 4 0.0308
1 1 2 3 3 3 0.0142
1 1 2 3 3 4 0.0006
1 1 2 3 4 4 -0.0044
1 1 2 4 4 4 0.0353
1 1 3 3 3 3 0.0947
1 1 3 3 3 4 -0.0610
1 1 3 3 4 4 -0.0293
1 1 3 4 4 4 0.0638
1 1 4 4 4 4 0.2326
1 2 2 2 2 2 -0.2574
1 2 2 2 2 3 0.1018
1 2 2 2 2 4 0.0044
1 2 2 2 3 3 0.0248
1 2 2 2 3 4 0.0562
1 2 2 2 4 4 0.0221
1 2 2 3 3 3 0.0612
1 2 2 3 3 4 0.0184
1 2 2 3 4 4 0.0226
1 2 2 4 4 4 0.0247
1 2 3 3 3 3 0.0847
1 2 3 3 3 4 -0.0209
1 2 3 3 4 4 -0.0795
1 2 3 4 4 4 -0.0323
1 2 4 4 4 4 -0.0819
1 3 3 3 3 3 0.5486
1 3 3 3 3 4 -0.0311
1 3 3 3 4 4 -0.0592
1 3 3 4 4 4 0.0386
1 3 4 4 4 4 -0.0138
1 4 4 4 4 4 0.0246
2 2 2 2 2 2 0.9207
2 2 2 2 2 3 -0.0908
2 2 2 2 2 4 0.0633
2 2 2 2 3 3 0.1116
2 2 2 2 3 4 -0.0318
2 2 2 2 4 4 0.1629
2 2 2 3 3 3 0.1797
2 2 2 3 3 4 -0.0348
2 2 2 3 4 4 -0.0058
2 2 2 4 4 4 0.1359
2 2 3 3 3 3 0.0584
2 2 3 3 3 4 -0.0299
2 2 3 3 4 4 -0.0110
2 2 3 4 4 4 0.1375
2 2 4 4 4 4 -0.1405
2 3 3 3 3 3 0.3613
2 3 3 3 3 4 0.0809
2 3 3 3 4 4 0.0205
2 3 3 4 4 4 0.0196
2 3 4 4 4 4 0.0226
2 4 4 4 4 4 -0.2487
3 3 3 3 3 3 0.6007
3 3 3 3 3 4 -0.0272
3 3 3 3 4 4 -0.1343
3 3 3 4 4 4 -0.0233
3 3 4 4 4 4 -0.0227
3 4 4 4 4 4 -0.3355
4 4 4 4 4 4 -0.5937
)";

inline constexpr std::string_view kDeigA = R"(symtensor 4 3
unique
1 1 1 1 0.4982
1 1 1 2 -0.0582
1 1 1 3 -1.1719
1 1 2 2 0.2236
1 1 2 3 -0.0171
1 1 3 3 0.4597
1 2 2 2 0.4880
1 2 2 3 0.1852
1 2 3 3 -0.4087
1 3 3 3 0.7639
2 2 2 2 0.0000
2 2 2 3 -0.6162
2 2 3 3 0.1519
2 3 3 3 0.7631
3 3 3 3 2.6311
)";

/// Rounded D o D as printed alongside the D-eigenpair example.
inline constexpr std::string_view kDeigB = R"(symtensor 4 3
unique
1 1 1 1 3.0800
1 1 1 2 0.0614
1 1 1 3 0.2317
1 1 2 2 0.8140
1 1 2 3 0.0130
1 1 3 3 2.3551
1 2 2 2 0.0486
1 2 2 3 0.0616
1 2 3 3 0.0482
1 3 3 3 0.5288
2 2 2 2 1.9321
2 2 2 3 0.0236
2 2 3 3 1.8563
2 3 3 3 0.0681
3 3 3 3 16.0480
)";

inline constexpr std::string_view kRandomB = R"(symtensor 6 4
unique
1 1 1 1 1 1 0.2678
1 1 1 1 1 2 -0.0044
1 1 1 1 1 3 -0.0326
1 1 1 1 1 4 -0.0081
1 1 1 1 2 2 0.0591
1 1 1 1 2 3 -0.0009
1 1 1 1 2 4 -0.0045
1 1 1 1 3 3 0.0533
1 1 1 1 3 4 -0.0059
1 1 1 1 4 4 0.0511
1 1 1 2 2 2 -0.0029
1 1 1 2 2 3 -0.0072
1 1 1 2 2 4 -0.0016
1 1 1 2 3 3 -0.0005
1 1 1 2 3 4 0.0007
1 1 1 2 4 4 -0.0006
1 1 1 3 3 3 -0.0185
1 1 1 3 3 4 0.0001
1 1 1 3 4 4 -0.0058
1 1 1 4 4 4 -0.0046
1 1 2 2 2 2 0.0651
1 1 2 2 2 3 -0.0013
1 1 2 2 2 4 -0.0050
1 1 2 2 3 3 0.0190
1 1 2 2 3 4 -0.0023
1 1 2 2 4 4 0.0190
1 1 2 3 3 3 -0.0011
1 1 2 3 3 4 -0.0014
1 1 2 3 4 4 0.0000
1 1 2 4 4 4 -0.0043
1 1 3 3 3 3 0.0498
1 1 3 3 3 4 -0.0061
1 1 3 3 4 4 0.0169
1 1 3 4 4 4 -0.0060
1 1 4 4 4 4 0.0486
1 2 2 2 2 2 -0.0054
1 2 2 2 2 3 -0.0078
1 2 2 2 2 4 -0.0016
1 2 2 2 3 3 -0.0006
1 2 2 2 3 4 0.0008
1 2 2 2 4 4 -0.0006
1 2 2 3 3 3 -0.0067
1 2 2 3 3 4 0.0001
1 2 2 3 4 4 -0.0022
1 2 2 4 4 4 -0.0016
1 2 3 3 3 3 -0.0002
1 2 3 3 3 4 0.0006
1 2 3 3 4 4 -0.0002
1 2 3 4 4 4 0.0006
1 2 4 4 4 4 -0.0003
1 3 3 3 3 3 -0.0286
1 3 3 3 3 4 0.0017
1 3 3 3 4 4 -0.0056
1 3 3 4 4 4 0.0001
1 3 4 4 4 4 -0.0051
1 4 4 4 4 4 -0.0073
2 2 2 2 2 2 0.3585
2 2 2 2 2 3 -0.0082
2 2 2 2 2 4 -0.0279
2 2 2 2 3 3 0.0610
2 2 2 2 3 4 -0.0076
2 2 2 2 4 4 0.0636
2 2 2 3 3 3 -0.0042
2 2 2 3 3 4 -0.0044
2 2 2 3 4 4 -0.0002
2 2 2 4 4 4 -0.0145
2 2 3 3 3 3 0.0518
2 2 3 3 3 4 -0.0067
2 2 3 3 4 4 0.0184
2 2 3 4 4 4 -0.0069
2 2 4 4 4 4 0.0549
2 3 3 3 3 3 -0.0059
2 3 3 3 3 4 -0.0034
2 3 3 3 4 4 -0.0002
2 3 3 4 4 4 -0.0039
2 3 4 4 4 4 0.0010
2 4 4 4 4 4 -0.0208
3 3 3 3 3 3 0.2192
3 3 3 3 3 4 -0.0294
3 3 3 3 4 4 0.0477
3 3 3 4 4 4 -0.0181
3 3 4 4 4 4 0.0485
3 4 4 4 4 4 -0.0304
4 4 4 4 4 4 0.2305
)";

inline SymMatrix deig_d() {
  return SymMatrix(3, {1.755, 0.035, 0.132,  //
                       0.035, 1.390, 0.017,  //
                       0.132, 0.017, 4.006});
}

inline std::vector<FixtureEigenpair> kore02_fixtures() {
  return {
      {-1.0954, {0.5915, -0.7467, -0.3043}, Classification::Minimum, {1.86, 2.75}},
      {-0.5629, {0.1762, -0.1796, 0.9678}, Classification::Minimum, {1.63, 2.38}},
      {-0.0451, {0.7797, 0.6135, 0.1250}, Classification::Minimum, {0.82, 1.25}},
      {0.1735, {0.3357, 0.9073, 0.2531}, Classification::Saddle, {-1.10, 0.86}},
      {0.2433, {0.9895, 0.0947, -0.1088}, Classification::Saddle, {-1.19, 1.46}},
      {0.2628, {0.1318, -0.4425, -0.8870}, Classification::Saddle, {0.62, -2.17}},
      {0.2682, {0.6099, 0.4362, 0.6616}, Classification::Saddle, {-1.18, 0.79}},
      {0.3633, {0.2676, 0.6447, 0.7160}, Classification::Maximum, {-1.18, -0.57}},
      {0.5105, {0.3598, -0.7780, 0.5150}, Classification::Saddle, {0.59, -2.34}},
      {0.8169, {0.8412, -0.2635, 0.4722}, Classification::Maximum, {-2.26, -0.90}},
      {0.8893, {0.6672, 0.2471, -0.7027}, Classification::Maximum, {-1.85, -0.89}},
  };
}

inline std::vector<FixtureEigenpair> heig_fixtures() {
  return {
      {-10.7440, {0.4664, 0.4153, -0.5880, -0.5140}, Classification::Minimum, {75.69, 30.21, 41.28}},
      {-8.3201, {0.5970, -0.5816, -0.4740, -0.2842}, Classification::Minimum, {62.11, 28.56, 15.64}},
      {-4.1781, {0.4397, 0.5139, -0.5444, 0.4962}, Classification::Minimum, {5.67, 31.85, 21.21}},
      {-3.7180, {0.6843, 0.5519, 0.3136, 0.3589}, Classification::Minimum, {26.89, 7.05, 12.50}},
      {-3.3137, {0.5588, 0.4954, -0.6348, 0.1986}, Classification::Saddle, {-4.83, 11.31, 17.73}},
      {-3.0892, {0.6418, -0.2049, -0.6594, -0.3336}, Classification::Saddle, {-10.41, 22.10, 6.26}},
      {-2.9314, {0.3161, 0.5173, 0.4528, -0.6537}, Classification::Minimum, {31.95, 6.88, 13.47}},
      {-2.0437, {0.6637, 0.5911, -0.2205, 0.4017}, Classification::Saddle, {15.87, -4.81, 8.30}},
      {-1.3431, {0.0544, 0.4258, 0.0285, 0.9027}, Classification::Saddle, {4.40, 2.04, -0.85}},
      {-1.0965, {0.5156, 0.3387, 0.4874, 0.6180}, Classification::Saddle, {24.09, 14.29, -13.10}},
      {-1.0071, {0.2030, 0.5656, -0.0975, -0.7933}, Classification::Saddle, {-3.71, 4.13, 5.35}},
      {-0.3600, {0.6999, -0.1882, 0.3292, -0.6053}, Classification::Saddle, {9.74, 3.89, -2.07}},
      {-0.3428, {0.3879, -0.1700, 0.5174, -0.7436}, Classification::Saddle, {-3.52, 6.07, 1.24}},
      {0.0073, {0.3068, 0.0539, 0.3127, -0.8973}, Classification::Saddle, {-2.92, -1.29, 1.22}},
      {0.1902, {0.9744, -0.0316, 0.2013, -0.0952}, Classification::Saddle, {-1.49, 2.17, 0.65}},
      {0.3947, {0.5416, 0.4650, 0.0708, 0.6967}, Classification::Saddle, {8.59, -15.89, -3.63}},
      {0.4679, {0.9613, 0.0442, -0.2718, 0.0083}, Classification::Saddle, {1.32, -1.33, -1.73}},
      {0.5126, {0.4232, -0.6781, -0.2347, 0.5532}, Classification::Saddle, {-8.44, 9.45, 7.66}},
      {0.5236, {0.3092, 0.8725, 0.1389, -0.3518}, Classification::Saddle, {-2.58, 1.68, 3.60}},
      {0.7573, {0.5830, -0.2565, -0.3076, -0.7069}, Classification::Saddle, {1.86, -5.35, -14.39}},
      {0.8693, {0.2414, 0.8332, -0.2479, -0.4313}, Classification::Saddle, {3.48, -3.31, -2.38}},
      {0.9572, {0.1035, -0.9754, -0.1932, -0.0221}, Classification::Saddle, {-2.05, 0.83, 1.80}},
      {1.1006, {0.2033, -0.9035, -0.1584, 0.3424}, Classification::Saddle, {2.10, -2.38, -1.15}},
      {2.3186, {0.1227, -0.8044, -0.0334, -0.5804}, Classification::Saddle, {2.50, -2.74, -10.23}},
      {2.7045, {0.3618, -0.5607, -0.5723, 0.4766}, Classification::Saddle, {8.78, -17.72, -21.79}},
      {3.3889, {0.6320, 0.5549, 0.3596, -0.4043}, Classification::Saddle, {16.59, -25.41, -17.68}},
      {3.9099, {0.6722, -0.2683, -0.1665, 0.6697}, Classification::Saddle, {-21.17, -4.98, 5.01}},
      {4.8422, {0.5895, -0.2640, -0.4728, 0.5994}, Classification::Maximum, {-28.20, -6.48, -15.54}},
      {5.1757, {0.6513, 0.0021, 0.7550, -0.0760}, Classification::Saddle, {-23.82, 3.66, -3.35}},
      {5.8493, {0.6528, 0.5607, -0.0627, -0.5055}, Classification::Maximum, {-34.20, -22.87, -9.58}},
      {8.7371, {0.4837, 0.5502, 0.6671, -0.1354}, Classification::Maximum, {-7.66, -19.48, -43.93}},
      {9.0223, {0.5927, -0.5567, 0.5820, -0.0047}, Classification::Saddle, {-58.03, -28.84, 4.60}},
      {9.6386, {0.5342, -0.5601, 0.5466, -0.3197}, Classification::Maximum, {-64.78, -41.13, -9.04}},
      {14.6941, {0.5426, -0.4853, 0.4760, 0.4936}, Classification::Maximum, {-94.14, -61.11, -54.81}},
  };
}

/// x is scaled so that x^T D x = 1, not to unit length.
inline std::vector<FixtureEigenpair> deig_fixtures() {
  return {
      {-0.3313, {0.2309, -0.7741, -0.1509}, Classification::Minimum, {1.02, 2.11}},
      {-0.1242, {0.6577, 0.0712, 0.2189}, Classification::Minimum, {0.35, 1.25}},
      {-0.0074, {0.2161, 0.3149, -0.4485}, Classification::Minimum, {0.36, 0.46}},
      {0.0611, {0.6113, -0.4573, 0.1181}, Classification::Saddle, {-0.63, 1.14}},
      {0.1039, {0.3314, 0.5239, 0.3084}, Classification::Saddle, {-0.46, 0.63}},
      {0.2009, {0.2440, -0.1250, 0.4601}, Classification::Saddle, {-0.32, 0.07}},
      {0.2056, {0.1211, -0.2367, -0.4766}, Classification::Saddle, {-0.29, 0.13}},
      {0.2219, {0.1143, 0.1812, 0.4773}, Classification::Maximum, {-0.08, -0.20}},
      {0.2431, {0.0943, -0.6840, 0.2905}, Classification::Saddle, {0.18, -1.11}},
      {0.2514, {0.2485, -0.5579, 0.3363}, Classification::Maximum, {-0.14, -0.71}},
      {0.3827, {0.6236, 0.3954, -0.1678}, Classification::Saddle, {-1.58, 0.32}},
      {0.4359, {0.4336, 0.6714, -0.0949}, Classification::Maximum, {-0.43, -1.64}},
      {0.5356, {0.6638, -0.1123, -0.2537}, Classification::Maximum, {-0.48, -1.43}},
  };
}

inline std::vector<FixtureEigenpair> random_fixtures() {
  return {
      {-6.3985, {0.0733, 0.1345, 0.3877, 0.9090}, Classification::Minimum, {20.43, 4.93, 11.20}},
      {-3.5998, {0.7899, 0.4554, 0.2814, 0.2991}, Classification::Minimum, {8.05, 10.39, 12.41}},
      {-3.2777, {0.6888, -0.6272, -0.2914, -0.2174}, Classification::Minimum, {8.27, 3.65, 5.95}},
      {-1.7537, {0.6329, -0.2966, -0.6812, -0.2180}, Classification::Saddle, {-4.25, 3.00, 5.56}},
      {-1.1507, {0.1935, 0.5444, 0.2991, -0.7594}, Classification::Minimum, {0.73, 3.54, 4.20}},
      {-1.0696, {0.1372, 0.5068, 0.0665, -0.8485}, Classification::Saddle, {-1.54, 3.30, 3.64}},
      {-1.0456, {0.2365, 0.4798, -0.7212, 0.4402}, Classification::Saddle, {-1.16, 1.54, 2.57}},
      {-0.7842, {0.5409, 0.3388, 0.4698, 0.6099}, Classification::Saddle, {16.02, 8.79, -12.47}},
      {-0.7457, {0.6348, 0.5354, -0.4388, 0.3434}, Classification::Saddle, {2.49, 0.94, -1.59}},
      {-0.2542, {0.3900, -0.1333, 0.4946, -0.7652}, Classification::Saddle, {-2.51, 2.99, 0.93}},
      {-0.2359, {0.6956, -0.1369, 0.3550, -0.6094}, Classification::Saddle, {6.38, 2.23, -1.27}},
      {0.0132, {0.3064, 0.0541, 0.3111, -0.8980}, Classification::Saddle, {-5.33, -2.36, 2.21}},
      {0.1633, {0.4278, -0.6578, -0.2545, 0.5652}, Classification::Saddle, {-2.42, 3.86, 2.36}},
      {0.3250, {0.5265, 0.4653, 0.0927, 0.7055}, Classification::Saddle, {7.50, -12.05, -3.41}},
      {0.5206, {0.3738, -0.4806, -0.6066, 0.5111}, Classification::Saddle, {3.19, -2.27, -1.47}},
      {0.5463, {0.5157, -0.3055, -0.3313, -0.7287}, Classification::Saddle, {-9.91, -3.67, 1.37}},
      {0.5945, {0.4015, 0.8447, 0.1782, -0.3058}, Classification::Saddle, {-3.70, 4.95, 1.87}},
      {0.6730, {0.9634, -0.0009, 0.2396, -0.1204}, Classification::Saddle, {-5.84, 7.88, 1.78}},
      {0.8862, {0.3559, 0.8571, -0.1675, -0.3326}, Classification::Saddle, {3.55, -2.24, -2.63}},
      {1.2962, {0.9849, 0.0018, -0.1681, 0.0419}, Classification::Saddle, {2.20, -5.97, -3.18}},
      {1.4646, {0.7396, 0.4441, 0.4009, -0.3083}, Classification::Saddle, {8.41, -2.08, -7.72}},
      {2.9979, {0.8224, 0.4083, -0.0174, -0.3958}, Classification::Maximum, {-4.00, -5.46, -6.56}},
      {3.5181, {0.4494, -0.7574, 0.4502, -0.1469}, Classification::Saddle, {-9.40, 1.89, -2.83}},
      {3.6087, {0.0340, -0.8989, -0.0373, -0.4353}, Classification::Saddle, {0.87, -8.03, -5.77}},
      {3.7394, {0.2185, -0.9142, 0.2197, -0.2613}, Classification::Maximum, {-8.72, -0.90, -3.34}},
      {11.3476, {0.4064, 0.2313, 0.8810, 0.0716}, Classification::Maximum, {-7.20, -18.98, -21.53}},
  };
}

inline std::vector<ReferenceExperiment> kore02_experiments() {
  return {
      {1, std::nullopt, 100, 0,
       {{53, 0.8893, {0.6672, 0.2471, -0.7027}, 30},
        {29, 0.8169, {0.8412, -0.2635, 0.4722}, 34},
        {18, 0.3633, {0.2676, 0.6447, 0.7160}, 26}}},
      {1, 2.0, 100, 0,
       {{53, 0.8893, {0.6672, 0.2471, -0.7027}, 49},
        {29, 0.8169, {0.8412, -0.2635, 0.4722}, 45},
        {18, 0.3633, {0.2676, 0.6447, 0.7160}, 57}}},
      {1, 10.0, 100, 5,
       {{48, 0.8893, {0.6672, 0.2471, -0.7027}, 192},
        {29, 0.8169, {0.8412, -0.2635, 0.4722}, 185},
        {18, 0.3633, {0.2676, 0.6447, 0.7160}, 261}}},
      {-1, std::nullopt, 100, 0,
       {{22, -0.0451, {0.7797, 0.6135, 0.1250}, 18},
        {37, -0.5629, {0.1762, -0.1796, 0.9678}, 17},
        {41, -1.0954, {0.5915, -0.7467, -0.3043}, 17}}},
      {-1, -2.0, 100, 0,
       {{22, -0.0451, {0.7797, 0.6135, 0.1250}, 34},
        {37, -0.5629, {0.1762, -0.1796, 0.9678}, 20},
        {41, -1.0954, {0.5915, -0.7467, -0.3043}, 21}}},
      {-1, -10.0, 100, 0,
       {{22, -0.0451, {0.7797, 0.6135, 0.1250}, 186},
        {37, -0.5629, {0.1762, -0.1796, 0.9678}, 103},
        {41, -1.0954, {0.5915, -0.7467, -0.3043}, 94}}},
  };
}

inline std::vector<ReferenceExperiment> heig_experiments() {
  return {
      {1, std::nullopt, 1000, 0,
       {{211, 14.6941, {0.5426, -0.4853, 0.4760, 0.4936}, 28},
        {144, 9.6386, {0.5342, -0.5601, 0.5466, -0.3197}, 110},
        {338, 8.7371, {0.4837, 0.5502, 0.6671, -0.1354}, 100},
        {169, 5.8493, {0.6528, 0.5607, -0.0627, -0.5055}, 54},
        {138, 4.8422, {0.5895, -0.2640, -0.4728, 0.5994}, 66}}},
      {-1, std::nullopt, 1000, 0,
       {{130, -2.9314, {0.3161, 0.5173, 0.4528, -0.6537}, 76},
        {149, -3.7179, {0.6843, 0.5519, 0.3136, 0.3589}, 59},
        {152, -4.1781, {0.4397, 0.5139, -0.5444, 0.4962}, 99},
        {224, -8.3200, {0.5970, -0.5816, -0.4740, -0.2842}, 65},
        {345, -10.7440, {0.4664, 0.4153, -0.5880, -0.5140}, 47}}},
  };
}

inline std::vector<ReferenceExperiment> deig_experiments() {
  return {
      {1, std::nullopt, 100, 0,
       {{31, 0.5356, {0.9227, -0.1560, -0.3526}, 39},
        {19, 0.4359, {0.5388, 0.8342, -0.1179}, 48},
        {25, 0.2514, {0.3564, -0.8002, 0.4823}, 67},
        {25, 0.2219, {0.2184, 0.3463, 0.9124}, 34}}},
      {-1, std::nullopt, 100, 0,
       {{39, -0.0074, {0.3669, 0.5346, -0.7613}, 13},
        {37, -0.1242, {0.9439, 0.1022, 0.3141}, 51},
        {24, -0.3313, {0.2810, -0.9420, -0.1837}, 27}}},
  };
}

inline std::vector<ReferenceExperiment> random_experiments() {
  return {
      {1, std::nullopt, 1000, 0,
       {{683, 11.3476, {0.4064, 0.2313, 0.8810, 0.0716}, 59},
        {128, 3.7394, {0.2185, -0.9142, 0.2197, -0.2613}, 140},
        {189, 2.9979, {0.8224, 0.4083, -0.0174, -0.3958}, 23}}},
      {-1, std::nullopt, 1000, 0,
       {{151, -1.1507, {0.1935, 0.5444, 0.2991, -0.7594}, 88},
        {226, -3.2777, {0.6888, -0.6272, -0.2914, -0.2174}, 33},
        {140, -3.5998, {0.7899, 0.4554, 0.2814, 0.2991}, 22},
        {483, -6.3985, {0.0733, 0.1345, 0.3877, 0.9090}, 82}}},
  };
}

} // namespace data

inline const std::array<std::string_view, 4>& builtin_names() {
  static const std::array<std::string_view, 4> names{"kore02", "heig", "deig", "random"};
  return names;
}

/// Built-in problems:
///   kore02  Z-eigenpairs of a 4th-order, 3-dimensional tensor (Kofidis-Regalia)
///   heig    H-eigenpairs of a random 6th-order, 4-dimensional tensor
///   deig    D-eigenpairs of a diffusion-kurtosis tensor (Qi-Wang-Wu)
///   random  B-eigenpairs of the heig tensor against a random positive definite B
inline Dataset builtin(std::string_view name) {
  if (name == "kore02") {
    return {"kore02", "Z-eigenpairs, A in S[4,3] (Kofidis & Regalia, Example 1)",
            ProblemSpec::z(parse_tensor(data::kKore02A)), data::kore02_fixtures(), data::kore02_experiments()};
  }
  if (name == "heig") {
    return {"heig", "H-eigenpairs, random A in S[6,4]", ProblemSpec::h(parse_tensor(data::kRandomA)),
            data::heig_fixtures(), data::heig_experiments()};
  }
  if (name == "deig") {
    return {"deig", "D-eigenpairs, DKI tensor A in S[4,3] (Qi, Wang & Wu)",
            ProblemSpec::d(parse_tensor(data::kDeigA), data::deig_d()), data::deig_fixtures(),
            data::deig_experiments()};
  }
  if (name == "random") {
    return {"random", "B-eigenpairs, random A in S[6,4] and random positive definite B",
            ProblemSpec::explicit_b(parse_tensor(data::kRandomA), parse_tensor(data::kRandomB)),
            data::random_fixtures(), data::random_experiments()};
  }
  throw LookupError("unknown dataset '" + std::string(name) + "' (known: kore02, heig, deig, random)");
}

/// Parses a b-kind name: z, h, d or explicit.
inline BKind parse_b_kind(std::string_view s) {
  if (s == "z") {
    return BKind::Z;
  }
  if (s == "h") {
    return BKind::H;
  }
  if (s == "d") {
    return BKind::D;
  }
  if (s == "explicit") {
    return BKind::Explicit;
  }
  throw ParameterError("unknown b-kind '" + std::string(s) + "' (expected z, h, d or explicit)");
}

/// Builds a problem from tensor files. `b_path` is required for explicit B,
/// `d_path` (an order-2 tensor file) for D; each is rejected for other kinds.
inline ProblemSpec assemble_problem(const std::string& a_path, BKind kind, const std::optional<std::string>& b_path,
                                    const std::optional<std::string>& d_path, int beta = 1) {
  if (b_path && kind != BKind::Explicit) {
    throw ParameterError("a B tensor file is only used with b-kind explicit");
  }
  if (d_path && kind != BKind::D) {
    throw ParameterError("a D matrix file is only used with b-kind d");
  }
  SymTensor a = load_tensor(a_path);
  switch (kind) {
  case BKind::Z: return ProblemSpec::z(std::move(a), beta);
  case BKind::H: return ProblemSpec::h(std::move(a), beta);
  case BKind::D:
    if (!d_path) {
      throw ParameterError("b-kind d needs a D matrix file");
    }
    return ProblemSpec::d(std::move(a), load_matrix(*d_path), beta);
  case BKind::Explicit:
    if (!b_path) {
      throw ParameterError("b-kind explicit needs a B tensor file");
    }
    return ProblemSpec::explicit_b(std::move(a), load_tensor(*b_path), beta);
  }
  throw ParameterError("unknown b-kind");
}

} // namespace teneig
