#include <algorithm>
#include <climits>
#include <cstdint>
#include <functional>
#include <sstream>
#include <stdexcept>

#include "vqm/heisenberg.hpp"

namespace vqm {

std::string partition_id(const Partition& p) {
    std::ostringstream os;
    os << '[';
    for (std::size_t i = 0; i < p.size(); ++i)
        os << (i ? "," : "") << p[i];
    os << ']';
    return os.str();
}

Partition parse_partition_id(const std::string& id) {
    if (id.size() < 2 || id.front() != '[' || id.back() != ']')
        throw std::invalid_argument("malformed partition id '" + id + "'");
    Partition p;
    std::string body = id.substr(1, id.size() - 2);
    std::istringstream is(body);
    std::string tok;
    while (std::getline(is, tok, ',')) {
        std::size_t used = 0;
        int v = 0;
        try {
            v = std::stoi(tok, &used);
        } catch (const std::exception&) {
            throw std::invalid_argument("malformed partition id '" + id + "'");
        }
        if (used != tok.size() || v <= 0)
            throw std::invalid_argument("malformed partition id '" + id + "'");
        p.push_back(v);
    }
    if (!std::is_sorted(p.begin(), p.end(), std::greater<>()))
        throw std::invalid_argument("partition parts must be weakly decreasing: '" + id + "'");
    return p;
}

int partition_weight(const Partition& p) {
    int s = 0;
    for (int x : p)
        s += x;
    return s;
}

namespace {

void partitions_rec(int rest, int maxPart, Partition& cur, std::vector<Partition>& out) {
    if (rest == 0) {
        out.push_back(cur);
        return;
    }
    for (int p = std::min(rest, maxPart); p >= 1; --p) {
        cur.push_back(p);
        partitions_rec(rest - p, p, cur, out);
        cur.pop_back();
    }
}

Partition with_part(Partition p, int part) {
    p.insert(std::upper_bound(p.begin(), p.end(), part, std::greater<>()), part);
    return p;
}

} // namespace

std::vector<Partition> partitions_of(int k) {
    std::vector<Partition> out;
    if (k < 0)
        return out;
    Partition cur;
    partitions_rec(k, k, cur, out);
    return out;
}

namespace fock {

namespace {

void add_to(State& s, const Partition& p, const Rational& c) {
    if (c.is_zero())
        return;
    auto [it, inserted] = s.try_emplace(p, c);
    if (!inserted) {
        it->second += c;
        if (it->second.is_zero())
            s.erase(it);
    }
}

} // namespace

State apply_alpha(int m, const State& s, const Rational& lambda) {
    State out;
    for (const auto& [p, c] : s) {
        if (m < 0) {
            add_to(out, with_part(p, -m), c);
        } else if (m == 0) {
            add_to(out, p, c * lambda);
        } else {
            auto lo = std::find(p.begin(), p.end(), m);
            if (lo == p.end())
                continue;
            long mult = std::count(p.begin(), p.end(), m);
            Partition q = p;
            q.erase(q.begin() + (lo - p.begin()));
            add_to(out, q, c * Rational(static_cast<long>(m) * mult));
        }
    }
    return out;
}

namespace {

// Enumerates mode tuples (m_0, ..., m_{k-1}) with a fixed sum for the
// normal-ordered product of the currents d^{(q-1)} alpha(x) / (q-1)!.
// Factors with equal q commute, so within such a block only non-decreasing
// tuples are visited and weighted by the number of their distinct orderings.
struct ModeExpansion {
    const Partition& gen;
    const Rational& lambda;
    int maxCreate;      // total creation bounded by the result depth
    State& out;
    std::vector<int> chosen{};

    Rational orderings() const {
        Rational r(1);
        std::size_t i = 0;
        while (i < gen.size()) {
            std::size_t j = i;
            while (j < gen.size() && gen[j] == gen[i])
                ++j;
            // (j - i)! / prod over runs of equal modes of run!
            mpz_class num, den(1);
            mpz_fac_ui(num.get_mpz_t(), j - i);
            std::size_t a = i;
            while (a < j) {
                std::size_t b = a;
                while (b < j && chosen[b] == chosen[a])
                    ++b;
                mpz_class f;
                mpz_fac_ui(f.get_mpz_t(), b - a);
                den *= f;
                a = b;
            }
            r *= Rational(mpq_class(num, den));
            i = j;
        }
        return r;
    }

    void run(std::size_t i, int rest, std::vector<int>& remaining, std::vector<int>& created, int zeros,
             int createdSum, const Rational& coeff) {
        if (i == gen.size()) {
            if (rest != 0)
                return;
            Partition res(remaining.begin(), remaining.end());
            for (int c : created)
                res = with_part(std::move(res), c);
            Rational lz(1);
            for (int z = 0; z < zeros; ++z)
                lz *= lambda;
            add_to(out, res, coeff * lz * orderings());
            return;
        }
        const int q = gen[i];
        int remSum = 0;
        for (int x : remaining)
            remSum += x;
        if (rest > remSum || rest < -(maxCreate - createdSum))
            return;
        const int floor = (i > 0 && gen[i] == gen[i - 1]) ? chosen[i - 1] : INT32_MIN;
        auto try_mode = [&](int m) {
            if (m < floor)
                return;
            chosen[i] = m;
            // coefficient of alpha_m in d^{(q-1)} alpha(x)/(q-1)!: binom(-m-1, q-1)
            Rational w = binom(-m - 1, q - 1);
            if (w.is_zero())
                return;
            if (m > 0) {
                auto it = std::find(remaining.begin(), remaining.end(), m);
                if (it == remaining.end())
                    return;
                long mult = std::count(remaining.begin(), remaining.end(), m);
                std::size_t pos = static_cast<std::size_t>(it - remaining.begin());
                remaining.erase(it);
                run(i + 1, rest - m, remaining, created, zeros, createdSum, coeff * w * Rational(long(m) * mult));
                remaining.insert(remaining.begin() + static_cast<long>(pos), m);
            } else if (m == 0) {
                run(i + 1, rest, remaining, created, zeros + 1, createdSum, coeff * w);
            } else {
                if (createdSum - m > maxCreate)
                    return;
                created.push_back(-m);
                run(i + 1, rest - m, remaining, created, zeros, createdSum - m, coeff * w);
                created.pop_back();
            }
        };
        if (i + 1 == gen.size()) {
            try_mode(rest);
            return;
        }
        std::vector<int> distinct;
        for (int x : remaining)
            if (distinct.empty() || distinct.back() != x)
                distinct.push_back(x);
        for (int m : distinct)
            try_mode(m);
        for (int m = 0; m >= -(maxCreate - createdSum); --m)
            try_mode(m);
    }
};

} // namespace

State vertex_mode(const Partition& gen, int n, const Partition& target, const Rational& lambda, int maxDepth,
                  bool* overflow) {
    State out;
    const int depth = partition_weight(target);
    const int resultDepth = depth + partition_weight(gen) - n - 1;
    if (resultDepth < 0)
        return out;
    if (resultDepth > maxDepth) {
        if (overflow)
            *overflow = true;
        return out;
    }
    const int sum = n + 1 - partition_weight(gen);
    if (gen.empty()) {
        if (sum == 0)
            out.emplace(target, Rational(1));
        return out;
    }
    std::vector<int> remaining(target.begin(), target.end());
    std::vector<int> created;
    ModeExpansion ex{gen, lambda, resultDepth, out, std::vector<int>(gen.size())};
    ex.run(0, sum, remaining, created, 0, 0, Rational(1));
    return out;
}

State virasoro(int j, const State& s, const Rational& lambda) {
    if (j < -1 || j > 1)
        throw std::invalid_argument("virasoro: j must be -1, 0 or 1");
    State out;
    for (const auto& [p, c] : s) {
        State one{{p, c}};
        const int bound = partition_weight(p) + 2;
        for (int m = -bound; m <= bound; ++m) {
            int a = j - m, b = m;
            if (a > b)
                std::swap(a, b);      // annihilator on the right
            State t = apply_alpha(a, apply_alpha(b, one, lambda), lambda);
            for (const auto& [q, x] : t)
                add_to(out, q, x * Rational(1, 2));
        }
    }
    return out;
}

} // namespace fock
} // namespace vqm
