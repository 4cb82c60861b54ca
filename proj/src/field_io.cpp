#include "qtf/field_io.hpp"

#include <cmath>
#include <numbers>
#include <vector>

#include "byte_io.hpp"
#include "qtf/errors.hpp"

namespace qtf {

namespace {

void write_axis(detail::ByteWriter& w, const Axis& ax) {
  w.f64(ax.min);
  w.f64(ax.step);
}

void write_params(detail::ByteWriter& w, const OlctParams& p) {
  for (double v : {p.a(), p.b(), p.c(), p.d(), p.p(), p.q()}) w.f64(v);
}

Axis read_axis(detail::ByteReader& r, std::uint32_t n, const char* name) {
  const std::size_t at = r.position();
  const double min = r.f64(name);
  const double step = r.f64(name);
  try {
    return Axis(n, min, step);
  } catch (const ParameterError& e) {
    throw FormatError(std::string("invalid ") + name + " axis: " + e.what(), at);
  }
}

OlctParams read_params(detail::ByteReader& r) {
  const std::size_t at = r.position();
  double v[6];
  for (double& x : v) x = r.f64("parameters");
  try {
    return OlctParams(v[0], v[1], v[2], v[3], v[4], v[5]);
  } catch (const ParameterError& e) {
    throw FormatError(std::string("invalid parameters: ") + e.what(), at);
  }
}

// nw * step_w = 2 pi |b| / step_x, so step_x follows from the w axis.
std::size_t infer_stride(const Axis& w, const Axis& u, const OlctParams& p, std::size_t at) {
  const double step_x = 2.0 * std::numbers::pi * std::abs(p.b()) / (static_cast<double>(w.n) * w.step);
  const double ratio = u.step / step_x;
  const double rounded = std::round(ratio);
  if (rounded < 1.0 || std::abs(ratio - rounded) > 1e-6 * rounded) {
    throw FormatError("u step is not a whole multiple of the spatial step", at);
  }
  return static_cast<std::size_t>(rounded);
}

}  // namespace

std::string encode_qtf4(const StqolctField& field) {
  detail::ByteWriter w;
  w.reserve(136 + field.samples().size() * 32);
  w.magic("QTF4");
  w.u32(kQtf4Version);
  for (const Axis* ax : {&field.w1(), &field.w2(), &field.u1(), &field.u2()}) {
    w.u32(static_cast<std::uint32_t>(ax->n));
  }
  for (const Axis* ax : {&field.w1(), &field.w2(), &field.u1(), &field.u2()}) write_axis(w, *ax);
  write_params(w, field.params1());
  write_params(w, field.params2());
  for (const Quaternion& q : field.samples()) {
    w.f64(q.q0);
    w.f64(q.q1);
    w.f64(q.q2);
    w.f64(q.q3);
  }
  return std::move(w).take();
}

StqolctField decode_qtf4(std::string_view bytes) {
  detail::ByteReader r(bytes);
  r.expect_magic("QTF4");
  const std::size_t version_at = r.position();
  if (const auto version = r.u32("version"); version != kQtf4Version) {
    throw FormatError("unsupported QTF4 version " + std::to_string(version), version_at);
  }
  const std::uint32_t nw1 = r.u32("nw1"), nw2 = r.u32("nw2"), nu1 = r.u32("nu1"), nu2 = r.u32("nu2");
  const Axis w1 = read_axis(r, nw1, "w1");
  const Axis w2 = read_axis(r, nw2, "w2");
  const Axis u1 = read_axis(r, nu1, "u1");
  const Axis u2 = read_axis(r, nu2, "u2");
  const std::size_t params_at = r.position();
  const OlctParams p1 = read_params(r);
  const OlctParams p2 = read_params(r);
  const std::size_t stride1 = infer_stride(w1, u1, p1, params_at);
  const std::size_t stride2 = infer_stride(w2, u2, p2, params_at);
  if (stride1 != stride2) throw FormatError("u axes use different strides", params_at);

  // Each dimension is checked against the bytes left so the product cannot overflow.
  std::size_t count = 1;
  for (std::uint32_t n : {nw1, nw2, nu1, nu2}) {
    if (n > r.remaining() / 32 / count) throw FormatError("truncated input while reading payload", r.position());
    count *= n;
  }
  std::vector<Quaternion> data(count);
  for (auto& q : data) {
    const std::size_t at = r.position();
    q = {r.f64("q0"), r.f64("q1"), r.f64("q2"), r.f64("q3")};
    if (!is_finite(q)) throw FormatError("non-finite coefficient", at);
  }
  if (r.remaining() != 0) throw FormatError("trailing bytes after payload", r.position());
  return StqolctField(w1, w2, u1, u2, p1, p2, stride1, std::move(data));
}

void save_field(const StqolctField& field, const std::string& path) {
  detail::write_file(path, encode_qtf4(field));
}

StqolctField load_field(const std::string& path) { return decode_qtf4(detail::read_file(path)); }

}  // namespace qtf
