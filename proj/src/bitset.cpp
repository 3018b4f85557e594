#include "anosovkit/bitset.hpp"

#include "anosovkit/errors.hpp"

namespace anosovkit {

std::string Bitset::to_hex() const {
    static constexpr char kDigits[] = "0123456789abcdef";
    const std::size_t digits = (size_ + 3) / 4;
    std::string out(digits == 0 ? 1 : digits, '0');
    for (std::size_t d = 0; d < digits; ++d) {
        unsigned nibble = 0;
        for (std::size_t b = 0; b < 4; ++b) {
            std::size_t i = d * 4 + b;
            if (i < size_ && test(i)) nibble |= 1u << b;
        }
        out[out.size() - 1 - d] = kDigits[nibble];
    }
    return out;
}

Bitset Bitset::from_hex(std::string_view hex, std::size_t n) {
    Bitset out(n);
    std::size_t d = 0;
    for (auto it = hex.rbegin(); it != hex.rend(); ++it, ++d) {
        char c = *it;
        unsigned v;
        if (c >= '0' && c <= '9')
            v = static_cast<unsigned>(c - '0');
        else if (c >= 'a' && c <= 'f')
            v = static_cast<unsigned>(c - 'a' + 10);
        else if (c >= 'A' && c <= 'F')
            v = static_cast<unsigned>(c - 'A' + 10);
        else
            throw ParseError("invalid hex digit in bitset '" + std::string(hex) + "'");
        for (std::size_t b = 0; b < 4; ++b) {
            if (!(v >> b & 1u)) continue;
            std::size_t i = d * 4 + b;
            if (i >= n) throw ParseError("bitset hex has bits beyond size " + std::to_string(n));
            out.set(i);
        }
    }
    return out;
}

}  // namespace anosovkit
