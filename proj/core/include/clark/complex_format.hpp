#pragma once

#include <complex>
#include <string>

namespace clark {

// Text form used by the CLI and JSON reports: "a+bi" with shortest
// round-trip decimal digits, e.g. "0.5", "-i", "0.3+0.4i", "1e-09-2i".
std::string format_complex(std::complex<double> v);

// Accepts "a", "bi", "a+bi", "a-bi" with "i"/"-i"/"+i" shorthands and
// scientific notation. Throws Error("bad_complex") on malformed input.
std::complex<double> parse_complex(const std::string& text);

}  // namespace clark
