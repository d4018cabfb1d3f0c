#include "rbg/rng.hpp"

namespace rbg {

std::string_view to_string(RngMethod method) {
  switch (method) {
    case RngMethod::standard: return "standard";
    case RngMethod::java: return "java";
    case RngMethod::lemire: return "lemire";
  }
  return "?";
}

std::optional<RngMethod> parse_rng_method(std::string_view text) {
  if (text == "standard") return RngMethod::standard;
  if (text == "java") return RngMethod::java;
  if (text == "lemire") return RngMethod::lemire;
  return std::nullopt;
}

AnyRng make_rng(RngMethod method, std::uint64_t seed) {
  switch (method) {
    case RngMethod::java: return JavaRandom(seed);
    case RngMethod::lemire: return LemireRng(seed);
    case RngMethod::standard: break;
  }
  return StandardRng(seed);
}

}  // namespace rbg
