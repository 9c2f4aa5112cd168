#include "avss/gf256.hpp"

#include <stdexcept>

namespace avss::gf256 {

namespace {

uint8_t exp_table[512];
uint8_t log_table[256];
bool tables_ready = false;

void build() {
    uint16_t x = 1;
    for (int i = 0; i < 255; i++) {
        exp_table[i] = uint8_t(x);
        log_table[x] = uint8_t(i);
        // multiply by the generator 0x03 = x + 1
        x = uint16_t(x << 1) ^ x;
        if (x & 0x100) x ^= 0x11b;
    }
    for (int i = 255; i < 512; i++) exp_table[i] = exp_table[i - 255];
    tables_ready = true;
}

struct Init {
    Init() { build(); }
} init_once;

}  // namespace

void init_tables() {
    if (!tables_ready) build();
}

uint8_t mul(uint8_t a, uint8_t b) {
    if (a == 0 || b == 0) return 0;
    return exp_table[int(log_table[a]) + int(log_table[b])];
}

uint8_t inv(uint8_t a) {
    if (a == 0) throw std::domain_error("gf256: zero has no inverse");
    return exp_table[255 - int(log_table[a])];
}

}  // namespace avss::gf256
