#pragma once

// CSV formats for signals, QSTFT lattices, coefficient sequences and Hermite samples.
//
// Numbers are written in the shortest form that parses back to the same double, so a
// read-write cycle is bit-exact and outputs are byte-identical across runs. Files are
// written to a temporary sibling first and renamed into place.

#include <qtf/bargmann.hpp>
#include <qtf/error.hpp>
#include <qtf/quadrature.hpp>
#include <qtf/quaternion.hpp>
#include <qtf/stft.hpp>

#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

namespace qtf::io {

inline std::string format_double(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return {buf, res.ptr};
}

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t'))
    s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
    s.remove_suffix(1);
  return s;
}

inline std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (;;) {
    const auto pos = line.find(',', start);
    out.push_back(trim(line.substr(start, pos - start)));
    if (pos == std::string_view::npos)
      break;
    start = pos + 1;
  }
  return out;
}

inline double parse_double(std::string_view field, std::size_t line) {
  if (!field.empty() && field.front() == '+')
    field.remove_prefix(1);
  double v = 0.0;
  const auto res = std::from_chars(field.data(), field.data() + field.size(), v);
  if (field.empty() || res.ec != std::errc{} || res.ptr != field.data() + field.size())
    throw ParseError("malformed number '" + std::string(field) + "'", line);
  if (!std::isfinite(v))
    throw ParseError("non-finite value '" + std::string(field) + "'", line);
  return v;
}

/// Non-empty lines with their 1-based line numbers.
struct Line {
  std::size_t number;
  std::string text;
};

inline std::vector<Line> split_lines(const std::string &text) {
  std::vector<Line> out;
  std::istringstream in(text);
  std::string s;
  std::size_t n = 0;
  while (std::getline(in, s)) {
    ++n;
    if (!trim(s).empty())
      out.push_back({n, s});
  }
  return out;
}

inline std::string read_file(const std::filesystem::path &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw IoError("cannot open '" + path.string() + "' for reading");
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad())
    throw IoError("error reading '" + path.string() + "'");
  return ss.str();
}

/// Writes content to path via a temporary file and rename.
inline void write_atomic(const std::filesystem::path &path, const std::string &content) {
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out)
      throw IoError("cannot open '" + tmp.string() + "' for writing");
    out << content;
    out.flush();
    if (!out)
      throw IoError("error writing '" + tmp.string() + "'");
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw IoError("cannot move output into '" + path.string() + "'");
  }
}

namespace detail {

// Uniform axis from parsed node values; the parsed values are kept verbatim. lines[i]
// is the source line of nodes[i], used in error reports.
inline LineGrid axis_from_nodes(const std::vector<double> &nodes,
                                const std::vector<std::size_t> &lines, const char *what) {
  if (nodes.size() < 2)
    throw ParseError(std::string("need at least two ") + what + " values",
                     lines.empty() ? 1 : lines.back());
  for (std::size_t i = 1; i < nodes.size(); ++i)
    if (!(nodes[i] > nodes[i - 1]))
      throw ParseError(std::string(what) + " values must be strictly increasing", lines[i]);
  LineGrid g = make_grid(nodes.front(), nodes.back(), nodes.size());
  const double tol = 1e-9 * (g.hi - g.lo);
  for (std::size_t i = 0; i < nodes.size(); ++i)
    if (std::fabs(nodes[i] - g.nodes[i]) > tol)
      throw ParseError(std::string(what) + " values must be uniformly spaced", lines[i]);
  g.nodes = nodes;
  return g;
}

inline void append_row(std::string &out, std::initializer_list<double> values) {
  bool first = true;
  for (double v : values) {
    if (!first)
      out += ',';
    out += format_double(v);
    first = false;
  }
  out += '\n';
}

} // namespace detail

// ---------------------------------------------------------------- signals

inline constexpr std::string_view kSignalHeader = "t,w,x,y,z";
inline constexpr std::string_view kRealSignalHeader = "t,w";

inline std::string signal_to_csv(const SampledSignal &f) {
  std::string out(kSignalHeader);
  out += '\n';
  for (std::size_t i = 0; i < f.size(); ++i) {
    const auto &q = f.values[i];
    detail::append_row(out, {f.grid.nodes[i], q.w, q.x, q.y, q.z});
  }
  return out;
}

inline SampledSignal parse_signal_csv(const std::string &text) {
  const auto lines = split_lines(text);
  if (lines.empty())
    throw ParseError("empty signal file", 1);
  const auto header = trim(lines.front().text);
  std::size_t width;
  if (header == kSignalHeader)
    width = 5;
  else if (header == kRealSignalHeader)
    width = 2;
  else
    throw ParseError("signal header must be 't,w,x,y,z' or 't,w'", lines.front().number);

  std::vector<double> t;
  std::vector<std::size_t> where;
  std::vector<Quaternion> v;
  for (std::size_t r = 1; r < lines.size(); ++r) {
    const auto fields = split_fields(lines[r].text);
    if (fields.size() != width)
      throw ParseError("expected " + std::to_string(width) + " fields, found " +
                           std::to_string(fields.size()),
                       lines[r].number);
    double vals[5] = {0, 0, 0, 0, 0};
    for (std::size_t c = 0; c < width; ++c)
      vals[c] = parse_double(fields[c], lines[r].number);
    t.push_back(vals[0]);
    where.push_back(lines[r].number);
    v.push_back({vals[1], vals[2], vals[3], vals[4]});
  }
  if (t.empty())
    throw ParseError("signal file has no data rows", lines.front().number);
  return SampledSignal(detail::axis_from_nodes(t, where, "t"), std::move(v));
}

inline SampledSignal read_signal_csv(const std::filesystem::path &path) {
  return parse_signal_csv(read_file(path));
}

inline void write_signal_csv(const std::filesystem::path &path, const SampledSignal &f) {
  write_atomic(path, signal_to_csv(f));
}

// ---------------------------------------------------------------- QSTFT lattices

inline constexpr std::string_view kGridHeader = "x,w,vw,vx,vy,vz,mag";

inline std::string grid_to_csv(const TimeFreqGrid &V) {
  std::string out(kGridHeader);
  out += '\n';
  for (std::size_t ix = 0; ix < V.nx(); ++ix)
    for (std::size_t iw = 0; iw < V.nw(); ++iw) {
      const auto &q = V.at(ix, iw);
      detail::append_row(out, {V.xgrid.nodes[ix], V.wgrid.nodes[iw], q.w, q.x, q.y, q.z, abs(q)});
    }
  return out;
}

/// Rows must enumerate the full lattice with x varying slowest. The slice unit is not
/// part of the format and is supplied by the caller.
inline TimeFreqGrid parse_grid_csv(const std::string &text, const ImaginaryUnit &unit) {
  const auto lines = split_lines(text);
  if (lines.empty())
    throw ParseError("empty grid file", 1);
  if (trim(lines.front().text) != kGridHeader)
    throw ParseError("grid header must be 'x,w,vw,vx,vy,vz,mag'", lines.front().number);

  struct Row {
    double x, w;
    Quaternion v;
    std::size_t line;
  };
  std::vector<Row> rows;
  for (std::size_t r = 1; r < lines.size(); ++r) {
    const auto fields = split_fields(lines[r].text);
    if (fields.size() != 7)
      throw ParseError("expected 7 fields, found " + std::to_string(fields.size()),
                       lines[r].number);
    double vals[7];
    for (std::size_t c = 0; c < 7; ++c)
      vals[c] = parse_double(fields[c], lines[r].number);
    rows.push_back({vals[0], vals[1], {vals[2], vals[3], vals[4], vals[5]}, lines[r].number});
  }
  if (rows.empty())
    throw ParseError("grid file has no data rows", lines.front().number);

  std::vector<double> ws;
  for (const auto &r : rows) {
    if (r.x != rows.front().x)
      break;
    ws.push_back(r.w);
  }
  const std::size_t nw = ws.size();
  if (rows.size() % nw != 0)
    throw ParseError("row count is not a multiple of the frequency count", rows.back().line);
  const std::size_t nx = rows.size() / nw;
  std::vector<double> xs;
  std::vector<std::size_t> xlines, wlines;
  for (std::size_t ix = 0; ix < nx; ++ix) {
    xs.push_back(rows[ix * nw].x);
    xlines.push_back(rows[ix * nw].line);
  }
  for (std::size_t iw = 0; iw < nw; ++iw)
    wlines.push_back(rows[iw].line);
  TimeFreqGrid V{detail::axis_from_nodes(xs, xlines, "x"),
                 detail::axis_from_nodes(ws, wlines, "w"), unit,
                 std::vector<Quaternion>(rows.size())};
  for (std::size_t idx = 0; idx < rows.size(); ++idx) {
    const auto &r = rows[idx];
    if (r.x != xs[idx / nw] || r.w != ws[idx % nw])
      throw ParseError("row does not continue the x-major lattice", r.line);
    V.values[idx] = r.v;
  }
  return V;
}

inline TimeFreqGrid read_grid_csv(const std::filesystem::path &path, const ImaginaryUnit &unit) {
  return parse_grid_csv(read_file(path), unit);
}

inline void write_grid_csv(const std::filesystem::path &path, const TimeFreqGrid &V) {
  write_atomic(path, grid_to_csv(V));
}

// ---------------------------------------------------------------- coefficients, Hermite

inline std::string coefficients_to_csv(const CoefficientSequence &c) {
  std::string out = "k,cw,cx,cy,cz\n";
  for (std::size_t k = 0; k < c.size(); ++k) {
    const auto &q = c.coeffs[k];
    out += std::to_string(k);
    out += ',';
    detail::append_row(out, {q.w, q.x, q.y, q.z});
  }
  return out;
}

inline std::string hermite_to_csv(const SampledSignal &psi) {
  std::string out = "t,value\n";
  for (std::size_t i = 0; i < psi.size(); ++i)
    detail::append_row(out, {psi.grid.nodes[i], psi.values[i].w});
  return out;
}

} // namespace qtf::io
