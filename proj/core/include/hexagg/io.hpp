/**
 * @file io.hpp
 * @brief Points files and index snapshots.
 *
 * Points file: one point per line as `vx,x0,vy,y0,vz,z0`; blank lines and
 * anything after `#` are ignored.
 *
 * Index snapshot (text, every real printed with 17 significant digits):
 *
 *     hexagg-index v1
 *     subdivisions <s>
 *     points <n>
 *     lower <6 reals>
 *     upper <6 reals>
 *     divisions <6 ints>
 *     buckets <B>
 *     then per bucket, in ascending cell-id order:
 *     bucket <6 ints: cell id> <b>
 *     hist <axis> <s counts>                      (axes 0..5)
 *     trend <axis> <slope> <intercept> <shift>    (axes 0..5)
 *     scale <mass_scale> <trend_integral>
 *
 * Loading rebuilds each bucket from its histograms and rejects the file if
 * the stored trends or totals disagree with the rebuilt ones.
 */
#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "hexagg/bucket_index.hpp"
#include "hexagg/core_model.hpp"

namespace hexagg {

std::vector<Hex6> read_points(std::istream& in);
std::vector<Hex6> read_points_file(const std::string& path);
void write_points(std::ostream& out, const std::vector<Hex6>& points);
void write_points_file(const std::string& path, const std::vector<Hex6>& points);

/// Parse "a,b,c,d,e,f" into a hex point. Throws ParseError.
Hex6 parse_hex(const std::string& text);

void save_index(std::ostream& out, const MovingIndex& idx);
void save_index_file(const std::string& path, const MovingIndex& idx);
MovingIndex load_index(std::istream& in);
MovingIndex load_index_file(const std::string& path);

}  // namespace hexagg
