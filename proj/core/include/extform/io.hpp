#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "extform/polyhedron.hpp"
#include "extform/slack.hpp"

namespace extform::io {

/// Plain text formats. Entries are canonical rationals ("p" or "p/q"), blank
/// lines and lines starting with '#' are ignored, and a trailing "# text" on a
/// data row is that row's label.
///
///   HPOLY <dim> <#ineq> <#eq>      then rows "a_1 ... a_dim <= b" and "c_1 ... c_dim = d"
///   VPOLY <dim> <#pts>             then rows "x_1 ... x_dim"
///   EXT <d> <n>                    then an HPOLY block, "PROJ", n rows of d+1 entries
///   MATRIX <rows> <cols>           then an optional "COLLABELS l_1 ... l_cols" line and the rows
///
/// An EXT file may carry "# extension: <name>". A MATRIX may be followed by
/// "SPACE <k>" and k rows "c_1 ... c_rows = d".
/// Parse errors throw InputError with the line number.

std::string write_hpoly(const HPoly& poly);
HPoly read_hpoly(std::string_view text);

std::string write_vpoly(const VPoly& poly);
VPoly read_vpoly(std::string_view text);

std::string write_extension(const Extension& ext);
Extension read_extension(std::string_view text);

struct LabeledMatrix {
  RatMatrix entries;
  std::vector<std::string> row_labels;
  std::vector<std::string> col_labels;

  bool operator==(const LabeledMatrix&) const = default;
};

std::string write_matrix(const LabeledMatrix& m, std::size_t cols);
LabeledMatrix read_matrix(std::string_view text);

std::string write_slack(const SlackMatrix& slack);
SlackMatrix read_slack(std::string_view text);

/// First token of the first data line ("HPOLY", "VPOLY", "EXT", "MATRIX").
std::string detect_format(std::string_view text);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& text);

}  // namespace extform::io
