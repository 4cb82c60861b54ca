#pragma once

/**
 * @file field_io.hpp
 * @brief QTF4 binary container for short-time coefficient fields.
 *
 * Layout (little-endian):
 *   "QTF4" | u32 version=1 | u32 nw1 | u32 nw2 | u32 nu1 | u32 nu2
 *   | (f64 min, f64 step) for w1, w2, u1, u2
 *   | 12 f64: a,b,c,d,p,q of the axis-1 matrix, then of the axis-2 matrix
 *   | payload quaternions (q0..q3 as f64), index order w1, w2, u1, u2 (u2 fastest)
 *
 * The window is not stored. The u-stride is recovered from the axes: the
 * spatial step follows from the w step and b, and the u step is a whole
 * multiple of it.
 */

#include <cstdint>
#include <string>
#include <string_view>

#include "qtf/stqolct.hpp"

namespace qtf {

inline constexpr std::uint32_t kQtf4Version = 1;

std::string encode_qtf4(const StqolctField& field);
StqolctField decode_qtf4(std::string_view bytes);

void save_field(const StqolctField& field, const std::string& path);
StqolctField load_field(const std::string& path);

}  // namespace qtf
