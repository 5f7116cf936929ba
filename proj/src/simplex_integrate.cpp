#include "tetracert/simplex_integrate.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <tuple>

#include "tetracert/moments.hpp"

namespace tetracert {

Rational monomial_integral(const Exponent3& e) {
    std::array<unsigned, 3> key{e.l, e.m, e.n};
    std::sort(key.begin(), key.end());

    static std::mutex mutex;
    static std::map<std::array<unsigned, 3>, Rational> cache;
    {
        std::lock_guard lock(mutex);
        if (auto it = cache.find(key); it != cache.end()) {
            return it->second;
        }
    }
    const Rational value = make_rational(factorial(key[0]) * factorial(key[1]) * factorial(key[2]),
                                         factorial(key[0] + key[1] + key[2] + 3));
    std::lock_guard lock(mutex);
    cache.emplace(key, value);
    return value;
}

Rational triple_integral(const Monomial9& m) {
    Rational r = monomial_integral(m.point(0));
    r *= monomial_integral(m.point(1));
    r *= monomial_integral(m.point(2));
    return r;
}

} // namespace tetracert
