#include "chambercross/presets.hpp"

#include <algorithm>
#include <cctype>
#include <random>

#include "chambercross/polyalg.hpp"

namespace chambercross {

IntMatrix roots_A(std::size_t r)
{
    // e_i - e_j, 1 <= i < j <= r+1; e_{r+1} is the origin of the coordinates
    IntMatrix out;
    for (std::size_t h = 1; h <= r; ++h) {
        for (std::size_t i = 0; i + h <= r; ++i) {
            std::size_t j = i + h;
            IntVec v(r, 0);
            v[i] = 1;
            if (j < r)
                v[j] = -1;
            out.push_back(v);
        }
    }
    return out;
}

IntMatrix roots_B(std::size_t r)
{
    IntMatrix out;
    for (std::size_t i = 0; i < r; ++i) {
        IntVec v(r, 0);
        v[i] = 1;
        out.push_back(v);
    }
    for (std::size_t i = 0; i < r; ++i) {
        for (std::size_t j = i + 1; j < r; ++j) {
            IntVec v(r, 0);
            v[i] = 1;
            v[j] = 1;
            out.push_back(v);
            v[j] = -1;
            out.push_back(v);
        }
    }
    return out;
}

VectorConfig preset(const std::string& name)
{
    std::string s;
    for (char c : name)
        if (c != '_')
            s += static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
    if (s.size() < 2 || (s[0] != 'A' && s[0] != 'B') ||
        !std::all_of(s.begin() + 1, s.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
        throw ValidationError("unknown preset: " + name);
    std::size_t r = std::stoul(s.substr(1));
    if (r > kMaxVars)
        throw ValidationError("preset rank exceeds " + std::to_string(kMaxVars));
    if (s[0] == 'A') {
        if (r < 1)
            throw ValidationError("A_r needs r >= 1");
        return validate_config(roots_A(r), s);
    }
    if (r < 2)
        throw ValidationError("B_r needs r >= 2");
    return validate_config(roots_B(r), s);
}

VectorConfig random_config(std::size_t r, std::size_t n, std::uint64_t seed, long bound)
{
    if (r == 0 || n < r)
        throw ValidationError("random configuration needs 1 <= rank <= size");
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<long> entry(-bound, bound);
    std::string name = "random-" + std::to_string(r) + "x" + std::to_string(n) + "-" + std::to_string(seed);
    for (int attempt = 0; attempt < 100000; ++attempt) {
        IntMatrix rows;
        while (rows.size() < n) {
            IntVec v(r);
            for (auto& x : v)
                x = entry(rng);
            if (std::any_of(v.begin(), v.end(), [](long x) { return x != 0; }))
                rows.push_back(v);
        }
        try {
            VectorConfig c = validate_config(rows, name);
            if (c.rank == r && !c.rewritten())
                return c;
        } catch (const ValidationError&) {
        }
    }
    throw InternalError("no pointed configuration found");
}

} // namespace chambercross
