#pragma once

#include <cstdint>

namespace avss::gf256 {

// GF(2^8) with the AES reduction polynomial x^8+x^4+x^3+x+1 (0x11b),
// log/exp tables over the generator 0x03.
void init_tables();

uint8_t mul(uint8_t a, uint8_t b);
uint8_t inv(uint8_t a);  // a != 0
inline uint8_t add(uint8_t a, uint8_t b) { return a ^ b; }

}  // namespace avss::gf256
