#pragma once

#include <string>

#include "secant/certificate.h"

namespace secant {

// Deterministic SVG rendering of a certificate: colored dots per part, 3D
// models drawn as one panel per z-layer. Identical input gives identical
// bytes.
std::string svg_string(const Certificate& cert);
void emit_svg(const Certificate& cert, const std::string& path);

}  // namespace secant
