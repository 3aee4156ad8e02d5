#pragma once

#include <iosfwd>
#include <string>

#include "wg/geometry.hpp"

namespace wg {

/// Read a WGPM-1 mesh document. Throws FileFormatError on unreadable input,
/// malformed fields, or an unknown version.
CurvedPolygonMesh read_wgpm(std::istream& in);
CurvedPolygonMesh read_wgpm_file(const std::string& path);

/// Write WGPM-1; numbers are emitted with 17 significant digits.
void write_wgpm(const CurvedPolygonMesh& mesh, std::ostream& out);
void write_wgpm_file(const CurvedPolygonMesh& mesh, const std::string& path);

}  // namespace wg
