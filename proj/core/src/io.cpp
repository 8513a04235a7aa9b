#include "extform/io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "extform/errors.hpp"

namespace extform::io {

namespace {

constexpr std::string_view kExtensionTag = "extension:";

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return std::string(s.substr(first, last - first + 1));
}

struct Line {
  std::size_t number = 0;
  std::vector<std::string> tokens;
  std::string label;
};

class Reader {
 public:
  explicit Reader(std::string_view text) {
    std::size_t number = 0;
    std::size_t start = 0;
    while (start <= text.size()) {
      std::size_t end = text.find('\n', start);
      if (end == std::string_view::npos) end = text.size();
      ++number;
      const std::string line = trim(text.substr(start, end - start));
      start = end + 1;
      if (line.empty()) continue;
      if (line.front() == '#') {
        const std::string body = trim(std::string_view(line).substr(1));
        if (body.rfind(kExtensionTag, 0) == 0) name_ = trim(std::string_view(body).substr(kExtensionTag.size()));
        continue;
      }
      Line l;
      l.number = number;
      const auto hash = line.find('#');
      std::istringstream data(line.substr(0, hash));
      for (std::string tok; data >> tok;) l.tokens.push_back(tok);
      if (hash != std::string::npos) l.label = trim(std::string_view(line).substr(hash + 1));
      lines_.push_back(std::move(l));
    }
  }

  bool done() const { return pos_ >= lines_.size(); }
  const Line& peek() const { return lines_.at(pos_); }
  const Line& next(const std::string& expected) {
    if (done()) throw InputError("unexpected end of input, expected " + expected);
    return lines_[pos_++];
  }
  const std::string& name() const { return name_; }

  void expect_end() const {
    if (!done()) throw InputError("line " + std::to_string(peek().number) + ": unexpected trailing content");
  }

 private:
  std::vector<Line> lines_;
  std::size_t pos_ = 0;
  std::string name_;
};

[[noreturn]] void fail(const Line& line, const std::string& what) {
  throw InputError("line " + std::to_string(line.number) + ": " + what);
}

std::size_t parse_count(const Line& line, const std::string& tok) {
  std::size_t v = 0;
  const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc() || ptr != tok.data() + tok.size()) fail(line, "expected a count, got '" + tok + "'");
  return v;
}

Rational parse_entry(const Line& line, const std::string& tok) {
  try {
    return parse_rational(tok);
  } catch (const InputError& e) {
    fail(line, e.what());
  }
}

std::vector<std::size_t> header(const Line& line, const std::string& keyword, std::size_t counts) {
  if (line.tokens.empty() || line.tokens[0] != keyword) fail(line, "expected " + keyword + " header");
  if (line.tokens.size() != counts + 1) fail(line, keyword + " header needs " + std::to_string(counts) + " numbers");
  std::vector<std::size_t> out;
  for (std::size_t i = 1; i <= counts; ++i) out.push_back(parse_count(line, line.tokens[i]));
  return out;
}

RatVector entries(const Line& line, std::size_t from, std::size_t count) {
  RatVector out;
  for (std::size_t i = 0; i < count; ++i) out.push_back(parse_entry(line, line.tokens[from + i]));
  return out;
}

void append_row(std::ostringstream& out, const RatVector& v) {
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i > 0) out << ' ';
    out << to_string(v[i]);
  }
}

void append_label(std::ostringstream& out, const std::string& label) {
  if (!label.empty()) out << " # " << label;
  out << '\n';
}

void append_hpoly(std::ostringstream& out, const HPoly& poly) {
  out << "HPOLY " << poly.dim() << ' ' << poly.inequalities().size() << ' ' << poly.equations().size() << '\n';
  for (const auto& r : poly.inequalities()) {
    append_row(out, r.coeffs);
    out << (r.coeffs.empty() ? "" : " ") << "<= " << to_string(r.rhs);
    append_label(out, r.label);
  }
  for (const auto& r : poly.equations()) {
    append_row(out, r.coeffs);
    out << (r.coeffs.empty() ? "" : " ") << "= " << to_string(r.rhs);
    append_label(out, r.label);
  }
}

HPoly parse_hpoly(Reader& in) {
  const Line& head = in.next("HPOLY header");
  const auto sizes = header(head, "HPOLY", 3);
  const std::size_t dim = sizes[0];
  HPoly poly(dim);
  for (std::size_t r = 0; r < sizes[1] + sizes[2]; ++r) {
    const bool eq = r >= sizes[1];
    const Line& line = in.next(eq ? "an equation row" : "an inequality row");
    const std::string rel = eq ? "=" : "<=";
    if (line.tokens.size() != dim + 2 || line.tokens[dim] != rel) {
      fail(line, "expected " + std::to_string(dim) + " entries, '" + rel + "', and a right-hand side");
    }
    RatVector a = entries(line, 0, dim);
    const Rational b = parse_entry(line, line.tokens[dim + 1]);
    if (eq) {
      poly.add_equation(std::move(a), b, line.label);
    } else {
      poly.add_inequality(std::move(a), b, line.label);
    }
  }
  return poly;
}

struct ParsedMatrix {
  LabeledMatrix m;
  std::vector<Constraint> space;
  bool has_space = false;
};

ParsedMatrix parse_matrix(std::string_view text) {
  Reader in(text);
  const auto sizes = header(in.next("MATRIX header"), "MATRIX", 2);
  ParsedMatrix out;
  const std::size_t rows = sizes[0];
  const std::size_t cols = sizes[1];
  if (!in.done() && !in.peek().tokens.empty() && in.peek().tokens[0] == "COLLABELS") {
    const Line& line = in.next("COLLABELS");
    if (line.tokens.size() != cols + 1) fail(line, "COLLABELS needs " + std::to_string(cols) + " labels");
    out.m.col_labels.assign(line.tokens.begin() + 1, line.tokens.end());
  }
  for (std::size_t r = 0; r < rows; ++r) {
    const Line& line = in.next("a matrix row");
    if (line.tokens.size() != cols) fail(line, "expected " + std::to_string(cols) + " entries");
    out.m.entries.push_back(entries(line, 0, cols));
    out.m.row_labels.push_back(line.label);
  }
  if (!in.done() && !in.peek().tokens.empty() && in.peek().tokens[0] == "SPACE") {
    out.has_space = true;
    const auto k = header(in.next("SPACE"), "SPACE", 1)[0];
    for (std::size_t e = 0; e < k; ++e) {
      const Line& line = in.next("an equation row");
      if (line.tokens.size() != rows + 2 || line.tokens[rows] != "=") {
        fail(line, "expected " + std::to_string(rows) + " entries, '=', and a right-hand side");
      }
      out.space.push_back({entries(line, 0, rows), parse_entry(line, line.tokens[rows + 1]), line.label});
    }
  }
  in.expect_end();
  return out;
}

}  // namespace

std::string write_hpoly(const HPoly& poly) {
  std::ostringstream out;
  append_hpoly(out, poly);
  return out.str();
}

HPoly read_hpoly(std::string_view text) {
  Reader in(text);
  HPoly poly = parse_hpoly(in);
  in.expect_end();
  return poly;
}

std::string write_vpoly(const VPoly& poly) {
  std::ostringstream out;
  out << "VPOLY " << poly.dim() << ' ' << poly.count() << '\n';
  for (std::size_t i = 0; i < poly.count(); ++i) {
    append_row(out, poly.points()[i]);
    append_label(out, poly.labels()[i]);
  }
  return out.str();
}

VPoly read_vpoly(std::string_view text) {
  Reader in(text);
  const auto sizes = header(in.next("VPOLY header"), "VPOLY", 2);
  VPoly poly(sizes[0]);
  for (std::size_t i = 0; i < sizes[1]; ++i) {
    const Line& line = in.next("a point row");
    if (line.tokens.size() != sizes[0]) fail(line, "expected " + std::to_string(sizes[0]) + " entries");
    RatVector p = entries(line, 0, sizes[0]);
    if (poly.has_point(p)) fail(line, "duplicate point");
    poly.add_point(std::move(p), line.label);
  }
  in.expect_end();
  return poly;
}

std::string write_extension(const Extension& ext) {
  std::ostringstream out;
  out << "EXT " << ext.q.dim() << ' ' << ext.target_dim() << '\n';
  if (!ext.name.empty()) out << "# extension: " << ext.name << '\n';
  append_hpoly(out, ext.q);
  out << "PROJ\n";
  for (std::size_t i = 0; i < ext.target_dim(); ++i) {
    RatVector row = ext.proj.matrix()[i];
    row.push_back(ext.proj.offset()[i]);
    append_row(out, row);
    out << '\n';
  }
  return out.str();
}

Extension read_extension(std::string_view text) {
  Reader in(text);
  const auto sizes = header(in.next("EXT header"), "EXT", 2);
  const std::size_t d = sizes[0];
  const std::size_t n = sizes[1];
  const Line& qhead = in.peek();
  HPoly q = parse_hpoly(in);
  if (q.dim() != d) fail(qhead, "HPOLY block has dim " + std::to_string(q.dim()) + ", EXT header says " + std::to_string(d));
  const Line& proj = in.next("PROJ");
  if (proj.tokens.size() != 1 || proj.tokens[0] != "PROJ") fail(proj, "expected PROJ");
  RatMatrix m;
  RatVector offset;
  for (std::size_t i = 0; i < n; ++i) {
    const Line& line = in.next("a projection row");
    if (line.tokens.size() != d + 1) fail(line, "expected " + std::to_string(d + 1) + " entries");
    RatVector row = entries(line, 0, d + 1);
    offset.push_back(row.back());
    row.pop_back();
    m.push_back(std::move(row));
  }
  in.expect_end();
  return {std::move(q), AffineMap(std::move(m), std::move(offset), d), in.name()};
}

std::string write_matrix(const LabeledMatrix& m, std::size_t cols) {
  std::ostringstream out;
  out << "MATRIX " << m.entries.size() << ' ' << cols << '\n';
  if (!m.col_labels.empty()) {
    if (m.col_labels.size() != cols) throw InputError("write_matrix: column label count differs from column count");
    for (const auto& l : m.col_labels) {
      if (l.empty() || l.find_first_of(" \t\n#") != std::string::npos) {
        throw InputError("write_matrix: column label '" + l + "' is empty or contains whitespace or '#'");
      }
    }
    out << "COLLABELS";
    for (const auto& l : m.col_labels) out << ' ' << l;
    out << '\n';
  }
  for (std::size_t i = 0; i < m.entries.size(); ++i) {
    append_row(out, m.entries[i]);
    append_label(out, i < m.row_labels.size() ? m.row_labels[i] : std::string());
  }
  return out.str();
}

LabeledMatrix read_matrix(std::string_view text) { return parse_matrix(text).m; }

std::string write_slack(const SlackMatrix& slack) {
  std::ostringstream out;
  out << write_matrix({slack.entries, slack.row_labels, slack.col_labels}, slack.cols());
  out << "SPACE " << slack.affine_space.size() << '\n';
  for (const auto& e : slack.affine_space) {
    append_row(out, e.coeffs);
    out << (e.coeffs.empty() ? "" : " ") << "= " << to_string(e.rhs);
    append_label(out, e.label);
  }
  return out.str();
}

SlackMatrix read_slack(std::string_view text) {
  ParsedMatrix p = parse_matrix(text);
  SlackMatrix out;
  out.entries = std::move(p.m.entries);
  out.row_labels = std::move(p.m.row_labels);
  out.col_labels = std::move(p.m.col_labels);
  out.affine_space = std::move(p.space);
  return out;
}

std::string detect_format(std::string_view text) {
  Reader in(text);
  if (in.done() || in.peek().tokens.empty()) throw InputError("empty input");
  return in.peek().tokens.front();
}

std::string read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw InputError("cannot open " + path);
  std::ostringstream s;
  s << f.rdbuf();
  return s.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw InputError("cannot write " + path);
  f << text;
  if (!f) throw InputError("failed writing " + path);
}

}  // namespace extform::io
