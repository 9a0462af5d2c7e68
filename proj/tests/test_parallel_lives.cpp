#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "parlives/locality.hpp"
#include "parlives/parallel_lives.hpp"

using namespace parlives;
using namespace parlives::lives;

namespace {

AgentWorld world(Agent a, const std::vector<Bit>& inputs) {
    auto w = make_world(a, a == Agent::Alice ? 0.0 : 10.0);
    for (Bit x : inputs) w = press_button(w, x);
    return w;
}

std::vector<Bit> bits(std::uint64_t v, std::size_t n) {
    std::vector<Bit> out(n);
    for (std::size_t i = 0; i < n; ++i) out[i] = (v >> i) & 1u;
    return out;
}

// Brute force: every Bob bubble compatible with this Alice bubble.
std::vector<std::size_t> compatible(const Bubble& a, const AgentWorld& bob) {
    std::vector<std::size_t> out;
    for (std::size_t j = 0; j < bob.bubbles.size(); ++j) {
        bool ok = true;
        const auto& ra = a.transcript.rounds;
        const auto& rb = bob.bubbles[j].transcript.rounds;
        for (std::size_t i = 0; i < ra.size(); ++i) {
            if (!ra[i].pressed || !rb[i].pressed) continue;
            if ((ra[i].output ^ rb[i].output) != (ra[i].input & rb[i].input)) ok = false;
        }
        if (ok) out.push_back(j);
    }
    return out;
}

}  // namespace

TEST_CASE("a press doubles the bubbles and halves their weight") {
    auto w = make_world(Agent::Alice, 0.0);
    CHECK(w.bubbles.size() == 1);
    CHECK(w.bubbles[0].weight == 1.0);
    for (std::size_t n = 1; n <= 8; ++n) {
        w = press_button(w, static_cast<Bit>(n % 2));
        CHECK(w.bubbles.size() == (std::size_t{1} << n));
        for (const auto& b : w.bubbles) CHECK(b.weight == std::ldexp(1.0, -static_cast<int>(n)));
        CHECK_NOTHROW(check_world(w));
    }
}

TEST_CASE("check_world catches broken invariants") {
    auto w = world(Agent::Bob, {0, 1});
    auto dup = w;
    dup.bubbles[1].transcript = dup.bubbles[0].transcript;
    CHECK_THROWS_AS(check_world(dup), std::logic_error);
    auto heavy = w;
    heavy.bubbles[0].weight = 0.5;
    CHECK_THROWS_AS(check_world(heavy), std::logic_error);
    auto missing = w;
    missing.bubbles.pop_back();
    CHECK_THROWS_AS(check_world(missing), std::logic_error);
}

TEST_CASE("split events depend only on local history") {
    auto w = make_world(Agent::Alice, 0.0);
    w = flip_coin(w, 1.0);
    w = press_button(w, 1, {1.0, 1.1, 1.2, 1.3});
    for (const auto& e : w.events) {
        CHECK(e.site == locality::Site::A);
        for (const auto& d : e.deps) CHECK(d.rfind("A.", 0) == 0);
    }
    CHECK(locality::audit(w.events).passed);
}

TEST_CASE("exhaustive: matching equals the brute-force compatible set") {
    for (std::size_t n = 1; n <= 4; ++n)
        for (std::uint64_t x = 0; x < (1u << n); ++x)
            for (std::uint64_t y = 0; y < (1u << n); ++y) {
                const auto a = world(Agent::Alice, bits(x, n));
                const auto b = world(Agent::Bob, bits(y, n));
                const auto pairs = match_bubbles(a, b);
                CHECK(is_bijection(pairs, a, b));
                for (const auto& p : pairs) {
                    const auto c = compatible(a.bubbles[p.alice_index], b);
                    REQUIRE(c.size() == 1);
                    CHECK(c[0] == p.bob_index);
                    CHECK(satisfies_pr_predicate(p));
                    CHECK(p.pair_weight == a.bubbles[p.alice_index].weight);
                }
            }
}

TEST_CASE("round count mismatch throws") {
    CHECK_THROWS_AS(match_bubbles(world(Agent::Alice, {0, 1}), world(Agent::Bob, {1})), std::invalid_argument);
}

TEST_CASE("one-sided rounds impose no constraint") {
    auto a = world(Agent::Alice, {1});
    a = idle_round(a);
    auto b = world(Agent::Bob, {1, 0});
    CHECK_NOTHROW(check_world(a));
    CHECK(a.bubbles.size() == 2);
    const auto pairs = match_bubbles(a, b);
    CHECK(pairs.size() == 4);
    CHECK_FALSE(is_bijection(pairs, a, b));
    double total = 0;
    for (const auto& p : pairs) {
        CHECK(satisfies_pr_predicate(p));
        CHECK(p.pair_weight == doctest::Approx(0.25));
        total += p.pair_weight;
        CHECK(compatible(p.alice_bubble, b).size() == 2);
    }
    CHECK(total == doctest::Approx(1.0));
}

TEST_CASE("protocol run: record shape and audit") {
    const std::vector<Bit> x{1, 0, 1}, y{1, 1, 0};
    const auto rec = run_protocol(x, y);
    CHECK(rec.n_rounds == 3);
    CHECK(rec.alice.bubbles.size() == 8);
    CHECK(rec.pairs.size() == 8);
    CHECK(is_bijection(rec.pairs, rec.alice, rec.bob));
    CHECK(pr_success_probability(rec) == 1.0);
    CHECK(locality::audit(rec.events).passed);
    CHECK(locality::sites_isolated_before_meeting(rec.events));
    for (std::size_t i = 1; i < rec.events.size(); ++i) CHECK(rec.events[i - 1].time <= rec.events[i].time);

    std::size_t matches = 0;
    for (const auto& e : rec.events)
        if (e.kind == locality::EventKind::match) ++matches;
    CHECK(matches == rec.pairs.size());
    for (auto m : red_marginals(rec, Agent::Alice)) CHECK(m == 0.5);
    for (auto m : red_marginals(rec, Agent::Bob)) CHECK(m == 0.5);
}

TEST_CASE("press order does not change the outcome") {
    const std::vector<Bit> x{0, 1, 1, 0}, y{1, 1, 0, 0};
    const auto base = run_protocol(x, y);
    for (auto order : {PressOrder::alice_first, PressOrder::bob_first}) {
        ProtocolOptions o;
        o.order = order;
        const auto other = run_protocol(x, y, o);
        REQUIRE(other.pairs.size() == base.pairs.size());
        for (std::size_t k = 0; k < base.pairs.size(); ++k) {
            CHECK(other.pairs[k].alice_bubble == base.pairs[k].alice_bubble);
            CHECK(other.pairs[k].bob_bubble == base.pairs[k].bob_bubble);
        }
    }
}

TEST_CASE("bad protocol input") {
    CHECK_THROWS_AS(run_protocol({}, {}), std::invalid_argument);
    CHECK_THROWS_AS(run_protocol({0, 1}, {0}), std::invalid_argument);
    Rng rng = stream(1, 1);
    CHECK_THROWS_AS(run_experiment(0, rng), std::invalid_argument);
}

TEST_CASE("property: seeded experiments satisfy the PR predicate") {
    Rng rng = stream(30, 0);
    for (int i = 0; i < 200; ++i) {
        const auto rec = run_experiment(1 + i % 6, rng);
        CHECK_NOTHROW(check_world(rec.alice));
        CHECK_NOTHROW(check_world(rec.bob));
        for (const auto& p : rec.pairs) CHECK(satisfies_pr_predicate(p));
        CHECK(locality::audit(rec.events).passed);
    }
}
