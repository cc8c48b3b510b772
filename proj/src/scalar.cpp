#include "sugra/scalar.hpp"

namespace sugra {

std::optional<Rat> exact_sqrt(const Rat& x) {
  if (x < 0) return std::nullopt;
  if (x == 0) return Rat(0);
  BigInt num = numerator(x), den = denominator(x);
  BigInt sn = sqrt(num), sd = sqrt(den);
  if (sn * sn != num || sd * sd != den) return std::nullopt;
  return Rat(sn, sd);
}

double to_double(const Rat& x) { return x.convert_to<double>(); }

}  // namespace sugra
