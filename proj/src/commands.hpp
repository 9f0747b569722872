#pragma once

#include <string>

#include "convolution.hpp"
#include "json_io.hpp"

namespace gconv {

/// Which convolution to evaluate. Def4 takes any pair of spaces; the cases
/// expect (G, G/H), (G/H, H\G) and (G/H, H\G/K).
enum class ConvolutionCase { Def4 = 0, One = 1, Two = 2, Three = 3 };

ConvolutionCase convolution_case_from_json(const json& j);

/// The spatial formula for the case, or the Fourier-product route projected
/// onto the same output space.
SpaceFunction run_convolution(ConvolutionCase c, const SpaceFunction& f, const SpaceFunction& g, bool via_fourier,
                              std::optional<ProductMode> mode = std::nullopt);

/// Dispatches a request object to one of
///   group, irreps, fourier, convolve, solve-basis, net, demo, verify.
/// Throws ParseError for unknown commands or malformed requests.
Report run_command(const std::string& command, const json& request);

}  // namespace gconv
