#include "ecgsep/signal.hpp"

#include <string>

#include "ecgsep/errors.hpp"

namespace ecgsep {

Recording make_recording(std::vector<Signal> chest, std::vector<Signal> abdomen) {
    if (chest.empty() || chest.size() > 3)
        throw LayoutError("need 1..3 chest channels, got " +
                          std::to_string(chest.size()));
    if (abdomen.empty() || abdomen.size() > 5)
        throw LayoutError("need 1..5 abdomen channels, got " +
                          std::to_string(abdomen.size()));

    const std::size_t n = chest.front().size();
    const double rate = chest.front().sample_rate_hz;
    if (n == 0) throw ShapeError("channels must be non-empty");
    if (!(rate > 0.0)) throw ConfigError("sample rate must be > 0");
    auto check = [&](const Signal& s) {
        if (s.size() != n)
            throw ShapeError("channel length mismatch: " +
                             std::to_string(s.size()) + " vs " + std::to_string(n));
        if (s.sample_rate_hz != rate)
            throw ConfigError("channel sample rate mismatch");
    };
    for (const Signal& s : chest) check(s);
    for (const Signal& s : abdomen) check(s);

    Recording rec;
    rec.chest = std::move(chest);
    rec.abdomen = std::move(abdomen);
    rec.sample_rate_hz = rate;
    return rec;
}

} // namespace ecgsep
