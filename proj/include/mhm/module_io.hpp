#pragma once

#include <string>
#include <string_view>

#include "mhm/module.hpp"
#include "mhm/vfiltration.hpp"

namespace mhm {

/// Module files are UTF-8 JSON documents:
///
///   {
///     "format": "mhm-module/1", "name": ..., "r": 2,
///     "integral_degrees": bool, "multigraded": bool, "has_w": bool,
///     "pure_weight": int (optional),
///     "support": {"lo": "num/den", "hi": "num/den"} (either bound optional),
///     "pieces": [{
///        "degree": "num/den", "dim": n,
///        "f_jumps": [{"level": p, "columns": [v, ...]}, ...],
///        "w_jumps": [...] (when has_w),
///        "multidegree": [[a_1, ..., a_r], ...] (when multigraded),
///        "truncation": [{"side": "out"|"in", "op": "t"|"d", "i": i, "columns": [...]}, ...]
///     }],
///     "operators": [{"op": "t"|"d", "i": i, "source": "num/den",
///                    "rows": m, "cols": n, "entries": [[row, col, "num/den"], ...]}]
///   }
///
/// A column listed under level p of "f_jumps" has F level p. When no piece
/// carries a "truncation" key the window boundary is marked from the stored
/// degrees. Errors are InputError with a JSON-pointer-like location.
MonodromicalModule parse_module(std::string_view json_text);
std::string serialize_module(const MonodromicalModule& m);

MonodromicalModule read_module_file(const std::string& path);
void write_module_file(const MonodromicalModule& m, const std::string& path);

/// V-filtration files:
///
///   {
///     "format": "mhm-vfiltration/1",
///     "direction": null | i0,
///     "jumps": ["num/den", ...],
///     "degrees": [{"degree": "num/den", "dim": n,
///                  "steps": [{"rows": k, "entries": [[row, col, "num/den"], ...]}, ...]}]
///   }
///
/// Step k of a degree is the row span of its sparse matrix and corresponds to
/// jumps[k]. Steps are serialized in reduced echelon form, so the output is
/// canonical.
VFiltrationData parse_vfiltration(std::string_view json_text);
std::string serialize_vfiltration(const VFiltrationData& v);

/// Reads a whole file; throws InputError when it cannot be opened.
std::string read_text_file(const std::string& path);

}  // namespace mhm
