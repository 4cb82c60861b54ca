#pragma once

/**
 * @file signal_io.hpp
 * @brief QS2D binary and CSV serialization of GridSignal2D.
 *
 * QS2D layout (all little-endian):
 *   "QS2D" | u32 version=1 | u32 n1 | u32 n2 | f64 min1 | f64 step1 | f64 min2 | f64 step2
 *   | n1*n2 samples of (q0, q1, q2, q3) as f64, row-major, axis-2 fastest.
 *
 * CSV: header "x1,x2,q0,q1,q2,q3", one LF-terminated row per sample in the
 * same order, shortest round-trip decimal doubles.
 */

#include <cstdint>
#include <string>
#include <string_view>

#include "qtf/grid_signal.hpp"

namespace qtf {

inline constexpr std::uint32_t kQs2dVersion = 1;

std::string encode_qs2d(const GridSignal2D& f);
GridSignal2D decode_qs2d(std::string_view bytes);

std::string encode_csv(const GridSignal2D& f);
GridSignal2D decode_csv(std::string_view text);

/// Format chosen by extension: ".csv" is CSV, anything else QS2D.
void save_signal(const GridSignal2D& f, const std::string& path);
GridSignal2D load_signal(const std::string& path);

}  // namespace qtf
