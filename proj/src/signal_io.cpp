#include "qtf/signal_io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <iterator>
#include <vector>

#include "byte_io.hpp"
#include "qtf/errors.hpp"

namespace qtf {

namespace detail {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "' for reading");
  std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  if (in.bad()) throw IoError("read error on '" + path + "'");
  return bytes;
}

void write_file(const std::string& path, std::string_view bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw IoError("write error on '" + path + "'");
}

}  // namespace detail

namespace {

bool ends_with(const std::string& s, std::string_view suffix) {
  return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

void append_double(std::string& out, double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  out.append(buf, res.ptr);
}

Axis axis_or_format_error(std::size_t n, double min, double step, std::size_t offset) {
  try {
    return Axis(n, min, step);
  } catch (const ParameterError& e) {
    throw FormatError(std::string("invalid axis: ") + e.what(), offset);
  }
}

}  // namespace

std::string encode_qs2d(const GridSignal2D& f) {
  detail::ByteWriter w;
  w.reserve(48 + f.size() * 32);
  w.magic("QS2D");
  w.u32(kQs2dVersion);
  w.u32(static_cast<std::uint32_t>(f.n1()));
  w.u32(static_cast<std::uint32_t>(f.n2()));
  w.f64(f.axis1().min);
  w.f64(f.axis1().step);
  w.f64(f.axis2().min);
  w.f64(f.axis2().step);
  for (const Quaternion& q : f.samples()) {
    w.f64(q.q0);
    w.f64(q.q1);
    w.f64(q.q2);
    w.f64(q.q3);
  }
  return std::move(w).take();
}

GridSignal2D decode_qs2d(std::string_view bytes) {
  detail::ByteReader r(bytes);
  r.expect_magic("QS2D");
  const std::size_t version_at = r.position();
  if (const auto version = r.u32("version"); version != kQs2dVersion) {
    throw FormatError("unsupported QS2D version " + std::to_string(version), version_at);
  }
  const std::size_t header_at = r.position();
  const std::uint32_t n1 = r.u32("n1");
  const std::uint32_t n2 = r.u32("n2");
  const double min1 = r.f64("min1");
  const double step1 = r.f64("step1");
  const double min2 = r.f64("min2");
  const double step2 = r.f64("step2");
  const Axis ax1 = axis_or_format_error(n1, min1, step1, header_at);
  const Axis ax2 = axis_or_format_error(n2, min2, step2, header_at);

  const std::size_t count = std::size_t(n1) * n2;
  if (count > r.remaining() / 32) throw FormatError("truncated input while reading payload", r.position());
  std::vector<Quaternion> data(count);
  for (auto& q : data) {
    const std::size_t at = r.position();
    q = {r.f64("q0"), r.f64("q1"), r.f64("q2"), r.f64("q3")};
    if (!is_finite(q)) throw FormatError("non-finite sample", at);
  }
  if (r.remaining() != 0) throw FormatError("trailing bytes after payload", r.position());
  return GridSignal2D(ax1, ax2, std::move(data));
}

std::string encode_csv(const GridSignal2D& f) {
  std::string out = "x1,x2,q0,q1,q2,q3\n";
  out.reserve(out.size() + f.size() * 120);
  for (std::size_t k1 = 0; k1 < f.n1(); ++k1) {
    const double x1 = f.axis1().coordinate(k1);
    for (std::size_t k2 = 0; k2 < f.n2(); ++k2) {
      const Quaternion& q = f(k1, k2);
      append_double(out, x1);
      for (double v : {f.axis2().coordinate(k2), q.q0, q.q1, q.q2, q.q3}) {
        out.push_back(',');
        append_double(out, v);
      }
      out.push_back('\n');
    }
  }
  return out;
}

GridSignal2D decode_csv(std::string_view text) {
  constexpr std::string_view kHeader = "x1,x2,q0,q1,q2,q3";
  std::size_t pos = text.find('\n');
  std::string_view header = text.substr(0, pos);
  if (!header.empty() && header.back() == '\r') header.remove_suffix(1);
  if (header != kHeader) throw FormatError("bad CSV header, expected '" + std::string(kHeader) + "'", 0);
  if (pos == std::string_view::npos) throw FormatError("CSV has no rows", text.size());

  struct Row {
    double v[6];
    std::size_t offset;
  };
  std::vector<Row> rows;
  ++pos;
  while (pos < text.size()) {
    const std::size_t line_start = pos;
    std::size_t eol = text.find('\n', pos);
    if (eol == std::string_view::npos) eol = text.size();
    std::string_view line = text.substr(pos, eol - pos);
    pos = eol + 1;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty()) continue;

    Row row{{}, line_start};
    const char* p = line.data();
    const char* end = line.data() + line.size();
    for (int c = 0; c < 6; ++c) {
      const auto [next, ec] = std::from_chars(p, end, row.v[c]);
      if (ec != std::errc{}) {
        throw FormatError("unparsable number in CSV column " + std::to_string(c + 1),
                          line_start + static_cast<std::size_t>(p - line.data()));
      }
      if (!std::isfinite(row.v[c])) {
        throw FormatError("non-finite value in CSV", line_start + static_cast<std::size_t>(p - line.data()));
      }
      p = next;
      if (c < 5) {
        if (p == end || *p != ',') throw FormatError("expected 6 comma-separated columns", line_start);
        ++p;
      }
    }
    if (p != end) throw FormatError("extra characters after 6th column", line_start);
    rows.push_back(row);
  }
  if (rows.size() < 4) throw FormatError("CSV needs at least a 2x2 grid", text.size());

  std::size_t n2 = 1;
  while (n2 < rows.size() && rows[n2].v[0] == rows[0].v[0]) ++n2;
  if (rows.size() % n2 != 0) throw FormatError("row count is not a multiple of the axis-2 length", text.size());
  const std::size_t n1 = rows.size() / n2;
  const double min1 = rows[0].v[0];
  const double min2 = rows[0].v[1];
  const double step1 = n1 > 1 ? (rows[(n1 - 1) * n2].v[0] - min1) / double(n1 - 1) : 0.0;
  const double step2 = n2 > 1 ? (rows[n2 - 1].v[1] - min2) / double(n2 - 1) : 0.0;
  const Axis ax1 = axis_or_format_error(n1, min1, step1, rows[0].offset);
  const Axis ax2 = axis_or_format_error(n2, min2, step2, rows[0].offset);

  std::vector<Quaternion> data(rows.size());
  for (std::size_t idx = 0; idx < rows.size(); ++idx) {
    const Row& row = rows[idx];
    const double e1 = ax1.coordinate(idx / n2);
    const double e2 = ax2.coordinate(idx % n2);
    if (std::abs(row.v[0] - e1) > 1e-9 * ax1.step || std::abs(row.v[1] - e2) > 1e-9 * ax2.step) {
      throw FormatError("coordinates do not form a uniform row-major grid", row.offset);
    }
    data[idx] = {row.v[2], row.v[3], row.v[4], row.v[5]};
  }
  return GridSignal2D(ax1, ax2, std::move(data));
}

void save_signal(const GridSignal2D& f, const std::string& path) {
  detail::write_file(path, ends_with(path, ".csv") ? encode_csv(f) : encode_qs2d(f));
}

GridSignal2D load_signal(const std::string& path) {
  const std::string bytes = detail::read_file(path);
  return ends_with(path, ".csv") ? decode_csv(bytes) : decode_qs2d(bytes);
}

}  // namespace qtf
