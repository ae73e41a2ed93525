#pragma once

#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "analytic.hpp"
#include "enriched.hpp"
#include "quantale.hpp"

// Quantale files:
//
//   # comment
//   NAME c3
//   ELEMENTS bot k top
//   ORDER
//   bot < k
//   k < top
//   TENSOR
//   bot : bot bot bot
//   k   : bot k   top
//   top : bot top top
//   UNIT k
//   INVOLUTION
//   k : k
//
// ORDER lists covering pairs; TENSOR rows are indexed by the left factor and
// columns follow ELEMENTS. INVOLUTION lines not given default to fixed
// points; the section is optional.
//
// Matrix files:
//
//   CARRIER x y
//   EXTENT
//   x : top
//   MATRIX
//   x : top bot
//   y : bot top
//
// Entries are element labels, or extended rationals for Lawvere's quantale.

namespace qdiss {

namespace detail {

inline std::string strip_comment(const std::string& line) {
  auto h = line.find('#');
  return h == std::string::npos ? line : line.substr(0, h);
}

inline std::vector<std::string> words(const std::string& s) {
  std::istringstream is(s);
  std::vector<std::string> out;
  for (std::string w; is >> w;) out.push_back(w);
  return out;
}

[[noreturn]] inline void parse_fail(std::size_t line, const std::string& msg) {
  throw Error(ErrorCode::ParseError, "line " + std::to_string(line) + ": " + msg);
}

/// Splits "head : rest" (or "head -> rest"); returns nullopt without a separator.
inline std::optional<std::pair<std::string, std::string>> split_row(const std::string& s) {
  auto c = s.find(':');
  std::size_t len = 1;
  if (c == std::string::npos) {
    c = s.find("->");
    len = 2;
  }
  if (c == std::string::npos) return std::nullopt;
  auto head = words(s.substr(0, c));
  if (head.size() != 1) return std::nullopt;
  return std::pair{head[0], s.substr(c + len)};
}

}  // namespace detail

/// Parses the text format into validated quantale data. Errors carry the
/// offending line number.
inline Quantale parse_quantale(const std::string& text, const std::string& default_name = "file") {
  enum class Sec { None, Elements, Order, Tensor, Involution };
  Sec sec = Sec::None;
  std::vector<std::string> labels;
  std::map<std::string, Element> index;
  std::vector<std::pair<Element, Element>> covers;
  std::vector<std::optional<std::vector<Element>>> rows;
  std::optional<std::vector<Element>> inv;
  std::optional<Element> unit;
  std::string name = default_name;
  std::size_t unit_line = 0, elements_line = 0;

  auto need_elements = [&](std::size_t ln) {
    if (labels.empty()) detail::parse_fail(ln, "ELEMENTS must come first");
  };
  auto lookup = [&](const std::string& l, std::size_t ln) {
    auto it = index.find(l);
    if (it == index.end()) detail::parse_fail(ln, "unknown element '" + l + "'");
    return it->second;
  };
  auto add_labels = [&](const std::vector<std::string>& ws, std::size_t ln) {
    for (const auto& w : ws) {
      if (w.find(':') != std::string::npos) detail::parse_fail(ln, "label '" + w + "' contains ':'");
      if (index.count(w)) detail::parse_fail(ln, "duplicate element '" + w + "'");
      index[w] = static_cast<Element>(labels.size());
      labels.push_back(w);
    }
  };

  std::istringstream is(text);
  std::string raw;
  std::size_t ln = 0;
  while (std::getline(is, raw)) {
    ++ln;
    std::string line = detail::strip_comment(raw);
    auto ws = detail::words(line);
    if (ws.empty()) continue;
    const std::string& kw = ws[0];
    if (kw == "NAME") {
      if (ws.size() != 2) detail::parse_fail(ln, "NAME takes one word");
      name = ws[1];
      sec = Sec::None;
      continue;
    }
    if (kw == "ELEMENTS") {
      if (!labels.empty()) detail::parse_fail(ln, "ELEMENTS given twice");
      elements_line = ln;
      add_labels({ws.begin() + 1, ws.end()}, ln);
      sec = Sec::Elements;
      continue;
    }
    if (kw == "ORDER") {
      need_elements(ln);
      sec = Sec::Order;
      continue;
    }
    if (kw == "TENSOR") {
      need_elements(ln);
      rows.assign(labels.size(), std::nullopt);
      sec = Sec::Tensor;
      continue;
    }
    if (kw == "UNIT") {
      need_elements(ln);
      if (ws.size() != 2) detail::parse_fail(ln, "UNIT takes one element");
      unit = lookup(ws[1], ln);
      unit_line = ln;
      sec = Sec::None;
      continue;
    }
    if (kw == "INVOLUTION") {
      need_elements(ln);
      inv.emplace(labels.size());
      for (Element e = 0; e < labels.size(); ++e) (*inv)[e] = e;
      sec = Sec::Involution;
      continue;
    }
    switch (sec) {
      case Sec::None: detail::parse_fail(ln, "unexpected '" + kw + "' outside a section");
      case Sec::Elements: add_labels(ws, ln); break;
      case Sec::Order: {
        std::vector<std::string> parts;
        for (const auto& w : ws)
          if (w != "<") parts.push_back(w);
        if (parts.size() < 2) detail::parse_fail(ln, "expected 'lower < upper'");
        for (std::size_t i = 0; i + 1 < parts.size(); ++i)
          covers.push_back({lookup(parts[i], ln), lookup(parts[i + 1], ln)});
        break;
      }
      case Sec::Tensor: {
        auto row = detail::split_row(line);
        if (!row) detail::parse_fail(ln, "expected 'label : values'");
        Element r = lookup(row->first, ln);
        if (rows[r]) detail::parse_fail(ln, "row '" + row->first + "' given twice");
        auto vals = detail::words(row->second);
        if (vals.size() != labels.size())
          detail::parse_fail(ln, "row '" + row->first + "' has " + std::to_string(vals.size()) +
                                     " entries, expected " + std::to_string(labels.size()));
        std::vector<Element> v;
        for (const auto& w : vals) v.push_back(lookup(w, ln));
        rows[r] = std::move(v);
        break;
      }
      case Sec::Involution: {
        auto row = detail::split_row(line);
        if (!row) detail::parse_fail(ln, "expected 'label : image'");
        auto img = detail::words(row->second);
        if (img.size() != 1) detail::parse_fail(ln, "involution maps to exactly one element");
        (*inv)[lookup(row->first, ln)] = lookup(img[0], ln);
        break;
      }
    }
  }
  if (labels.empty()) detail::parse_fail(ln, "no ELEMENTS section");
  if (rows.empty()) detail::parse_fail(ln, "no TENSOR section");
  for (Element r = 0; r < labels.size(); ++r)
    if (!rows[r]) detail::parse_fail(ln, "TENSOR row for '" + labels[r] + "' missing");
  if (!unit) detail::parse_fail(ln, "no UNIT given");

  QuantaleData d;
  d.name = name;
  d.labels = labels;
  try {
    d.lattice = FiniteLattice::from_covers(labels.size(), covers);
  } catch (const Error& e) {
    detail::parse_fail(elements_line, std::string("ORDER: ") + e.what());
  }
  const std::size_t n = labels.size();
  d.tensor.resize(n * n);
  for (Element r = 0; r < n; ++r)
    for (Element c = 0; c < n; ++c) d.tensor[r * n + c] = (*rows[r])[c];
  d.unit = *unit;
  d.involution = inv;
  auto rep = validate_quantale_data(d);
  if (!rep.ok())
    detail::parse_fail(unit_line, "not a quantale: " + rep.violations.front().str());
  return compute_residuals(std::move(d));
}

inline Quantale load_quantale(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw Error(ErrorCode::ParseError, "cannot open '" + path + "'");
  std::stringstream ss;
  ss << f.rdbuf();
  std::string stem = path.substr(path.find_last_of('/') + 1);
  return parse_quantale(ss.str(), stem.substr(0, stem.find('.')));
}

/// Covering pairs a ⋖ b of a finite lattice.
inline std::vector<std::pair<Element, Element>> covering_pairs(const FiniteLattice& L) {
  std::vector<std::pair<Element, Element>> out;
  for (Element a = 0; a < L.size(); ++a)
    for (Element b = 0; b < L.size(); ++b) {
      if (!L.lt(a, b)) continue;
      bool cover = true;
      for (Element c = 0; c < L.size() && cover; ++c) cover = !(L.lt(a, c) && L.lt(c, b));
      if (cover) out.push_back({a, b});
    }
  return out;
}

inline std::string serialize_quantale(const Quantale& Q) {
  std::ostringstream os;
  const std::size_t n = Q.size();
  os << "NAME " << Q.name() << "\nELEMENTS";
  for (Element e = 0; e < n; ++e) os << ' ' << Q.label(e);
  os << "\nORDER\n";
  for (auto [a, b] : covering_pairs(Q.lattice())) os << Q.label(a) << " < " << Q.label(b) << '\n';
  os << "TENSOR\n";
  for (Element a = 0; a < n; ++a) {
    os << Q.label(a) << " :";
    for (Element b = 0; b < n; ++b) os << ' ' << Q.label(Q.tensor(a, b));
    os << '\n';
  }
  os << "UNIT " << Q.label(Q.unit()) << '\n';
  if (Q.has_involution()) {
    os << "INVOLUTION\n";
    for (Element e = 0; e < n; ++e) os << Q.label(e) << " : " << Q.label(Q.involute(e)) << '\n';
  }
  return os.str();
}

// ---------------------------------------------------------------------------

/// Raw matrix file: labels only, resolved against a quantale later.
struct MatrixFile {
  std::vector<std::string> carrier;
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> extent;  // empty unless an EXTENT section is given
  std::vector<std::size_t> row_lines;
  std::vector<std::size_t> extent_lines;
};

inline MatrixFile parse_matrix_file(const std::string& text) {
  enum class Sec { None, Matrix, Extent };
  MatrixFile m;
  std::map<std::string, std::size_t> index;
  Sec sec = Sec::None;
  std::istringstream is(text);
  std::string raw;
  std::size_t ln = 0;
  while (std::getline(is, raw)) {
    ++ln;
    std::string line = detail::strip_comment(raw);
    auto ws = detail::words(line);
    if (ws.empty()) continue;
    if (ws[0] == "CARRIER") {
      if (!m.carrier.empty()) detail::parse_fail(ln, "CARRIER given twice");
      for (std::size_t i = 1; i < ws.size(); ++i) {
        if (index.count(ws[i])) detail::parse_fail(ln, "duplicate point '" + ws[i] + "'");
        index[ws[i]] = m.carrier.size();
        m.carrier.push_back(ws[i]);
      }
      if (m.carrier.empty()) detail::parse_fail(ln, "empty CARRIER");
      m.rows.assign(m.carrier.size(), {});
      m.row_lines.assign(m.carrier.size(), 0);
      sec = Sec::None;
      continue;
    }
    if (ws[0] == "MATRIX" || ws[0] == "EXTENT") {
      if (m.carrier.empty()) detail::parse_fail(ln, "CARRIER must come first");
      sec = ws[0] == "MATRIX" ? Sec::Matrix : Sec::Extent;
      if (sec == Sec::Extent) {
        m.extent.assign(m.carrier.size(), "");
        m.extent_lines.assign(m.carrier.size(), 0);
      }
      continue;
    }
    if (sec == Sec::None) detail::parse_fail(ln, "unexpected '" + ws[0] + "' outside a section");
    auto row = detail::split_row(line);
    if (!row) detail::parse_fail(ln, "expected 'point : values'");
    auto it = index.find(row->first);
    if (it == index.end()) detail::parse_fail(ln, "unknown point '" + row->first + "'");
    auto vals = detail::words(row->second);
    if (sec == Sec::Matrix) {
      if (!m.rows[it->second].empty()) detail::parse_fail(ln, "row '" + row->first + "' given twice");
      if (vals.size() != m.carrier.size())
        detail::parse_fail(ln, "row '" + row->first + "' has " + std::to_string(vals.size()) +
                                   " entries, expected " + std::to_string(m.carrier.size()));
      m.rows[it->second] = vals;
      m.row_lines[it->second] = ln;
    } else {
      if (vals.size() != 1) detail::parse_fail(ln, "extent takes one value");
      m.extent[it->second] = vals[0];
      m.extent_lines[it->second] = ln;
    }
  }
  if (m.carrier.empty()) detail::parse_fail(ln, "no CARRIER section");
  for (std::size_t i = 0; i < m.carrier.size(); ++i)
    if (m.rows[i].empty()) detail::parse_fail(ln, "MATRIX row for '" + m.carrier[i] + "' missing");
  for (std::size_t i = 0; i < m.extent.size(); ++i)
    if (m.extent[i].empty()) detail::parse_fail(ln, "EXTENT for '" + m.carrier[i] + "' missing");
  return m;
}

inline std::string read_text_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw Error(ErrorCode::ParseError, "cannot open '" + path + "'");
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

/// Resolves labels against Q; unknown labels are located parse errors.
inline Matrix<Element> resolve_matrix(const MatrixFile& m, const Quantale& Q) {
  const std::size_t n = m.carrier.size();
  Matrix<Element> a(n, Q.bottom());
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      try {
        a(i, j) = Q.find(m.rows[i][j]);
      } catch (const Error& e) {
        detail::parse_fail(m.row_lines[i], e.what());
      }
    }
  return a;
}

inline Matrix<ExtRational> resolve_matrix(const MatrixFile& m, const LawvereQuantale&) {
  const std::size_t n = m.carrier.size();
  Matrix<ExtRational> a(n, ExtRational(0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      try {
        a(i, j) = ExtRational::parse(m.rows[i][j]);
      } catch (const Error& e) {
        detail::parse_fail(m.row_lines[i], e.what());
      }
    }
  return a;
}

inline std::vector<Element> resolve_extent(const MatrixFile& m, const Quantale& Q) {
  std::vector<Element> E;
  for (std::size_t i = 0; i < m.extent.size(); ++i) {
    try {
      E.push_back(Q.find(m.extent[i]));
    } catch (const Error& e) {
      detail::parse_fail(m.extent_lines[i], e.what());
    }
  }
  return E;
}

}  // namespace qdiss
