#include "nsp/embedded_data.hpp"
#include "nsp/preferential.hpp"

#include "oracle.hpp"

#include <doctest.h>

#include <random>
#include <set>

using namespace nsp;
using doctest::Approx;

namespace {

const auto& space()
{
    static const auto s = compose_space<double>(default_catalog());
    return s;
}

Eigen::Index cell(const std::string& label)
{
    const auto idx = find_suite(default_catalog(), label);
    REQUIRE(idx.has_value());
    return space().index((*idx)[0], (*idx)[1], (*idx)[2]);
}

std::string label(const SuiteComposition<double>& s)
{
    return suite_label(default_catalog(), s);
}

WeightVector<double> random_weights(std::mt19937_64& rng)
{
    std::exponential_distribution<double> e(1.0);
    const double a = e(rng), b = e(rng), c = e(rng);
    const double s = a + b + c;
    return {a / s, b / s, c / s};
}

MetricCatalog random_catalog(std::mt19937_64& rng, int max_per_class)
{
    std::uniform_int_distribution<int> count(1, max_per_class);
    std::uniform_real_distribution<double> real(0.01, 5000.0);
    std::uniform_int_distribution<std::int64_t> slices(1, 50000);
    MetricCatalog c;
    for (auto cls : {AlgorithmClass::Encryption, AlgorithmClass::Hash, AlgorithmClass::KeyExchange}) {
        const int n = count(rng);
        for (int i = 0; i < n; ++i) {
            c.list(cls).push_back({"a" + std::to_string(i), cls, real(rng), real(rng), slices(rng), 1.0});
        }
    }
    return c;
}

} // namespace

TEST_CASE("weight vector classification")
{
    CHECK(WeightVector<double>{0.333, 0.333, 0.333}.priority() == PriorityClass::Equal);
    CHECK(WeightVector<double>{1, 0, 0}.priority() == PriorityClass::Single);
    CHECK(WeightVector<double>{0, 0, 1}.priority() == PriorityClass::Single);
    CHECK(WeightVector<double>{0.8, 0.1, 0.1}.priority() == PriorityClass::Multiple);
    CHECK(WeightVector<double>{0.5, 0.5, 0}.priority() == PriorityClass::Multiple);
}

TEST_CASE("weight validation")
{
    CHECK_NOTHROW(validate(WeightVector<double>{0.333, 0.333, 0.333}));
    CHECK_NOTHROW(validate(WeightVector<double>{0.25, 0.25, 0.5}));
    CHECK_THROWS_AS(validate(WeightVector<double>{0.5, 0.5, 0.5}), std::invalid_argument);
    CHECK_THROWS_AS(validate(WeightVector<double>{1.2, -0.1, -0.1}), std::invalid_argument);
    CHECK_THROWS_AS(parse_weights("0.5,0.5"), std::invalid_argument);
    CHECK_THROWS_AS(parse_weights("a,b,c"), std::invalid_argument);
    CHECK(parse_weights("1,0,0") == WeightVector<double>{1, 0, 0});
}

TEST_CASE("bundled weight sweep has the 46 published rows")
{
    const auto& w = table1_weights();
    REQUIRE(w.size() == 46);
    CHECK(w[0] == WeightVector<double>{0.333, 0.333, 0.333});
    CHECK(w[1] == WeightVector<double>{1, 0, 0});
    CHECK(w[4] == WeightVector<double>{0.8, 0.1, 0.1});
    CHECK(w[45] == WeightVector<double>{0.4, 0.4, 0.2});
    CHECK(w[0].priority() == PriorityClass::Equal);
    for (std::size_t i = 1; i < 4; ++i) {
        CHECK(w[i].priority() == PriorityClass::Single);
    }
    for (std::size_t i = 4; i < w.size(); ++i) {
        CHECK(w[i].priority() == PriorityClass::Multiple);
    }
}

TEST_CASE("compose_space sums the three constituent rows")
{
    const auto& s = space();
    CHECK(s.size() == 63);
    const auto r = cell("DES+MD5+RSA");
    CHECK(s.cells(r, 0) == Approx(1804.0));
    CHECK(s.cells(r, 1) == Approx(8.664));
    CHECK(s.cells(r, 2) == Approx(15358.0));

    CHECK(s.maxima(0) == Approx(3379.0));
    CHECK(s.maxima(2) == Approx(28821.0));
    CHECK(s.maxima(1) == Approx(9.219));
    const auto top = cell("AES+SHA-512+DH_RSA");
    CHECK(s.cells(top, 0) == s.maxima(0));
    CHECK(s.cells(top, 2) == s.maxima(2));
}

TEST_CASE("cell index layout is lexicographic")
{
    const auto& s = space();
    for (Eigen::Index row = 0; row < s.size(); ++row) {
        const auto [i, j, k] = s.unravel(row);
        CHECK(s.index(i, j, k) == row);
    }
    CHECK(s.unravel(s.index(4, 2, 0)) == std::array<Eigen::Index, 3>{4, 2, 0});
}

TEST_CASE("averages agree with the per-class mean form")
{
    const auto& c = default_catalog();
    const auto& s = space();
    const auto mean = [](const std::vector<AlgorithmMetrics>& v, auto field) {
        double sum = 0;
        for (const auto& a : v) {
            sum += double(a.*field);
        }
        return sum / double(v.size());
    };
    const double p = mean(c.encryption, &AlgorithmMetrics::power_mw) + mean(c.hash, &AlgorithmMetrics::power_mw) +
                     mean(c.key_exchange, &AlgorithmMetrics::power_mw);
    const double t = mean(c.encryption, &AlgorithmMetrics::throughput_gbps) +
                     mean(c.hash, &AlgorithmMetrics::throughput_gbps) +
                     mean(c.key_exchange, &AlgorithmMetrics::throughput_gbps);
    const double r = mean(c.encryption, &AlgorithmMetrics::slices) + mean(c.hash, &AlgorithmMetrics::slices) +
                     mean(c.key_exchange, &AlgorithmMetrics::slices);
    CHECK(std::abs(s.averages(0) - p) <= 1e-9 * p);
    CHECK(std::abs(s.averages(1) - t) <= 1e-9 * t);
    CHECK(std::abs(s.averages(2) - r) <= 1e-9 * r);
}

TEST_CASE("single-combination catalog")
{
    MetricCatalog c;
    c.encryption.push_back({"E", AlgorithmClass::Encryption, 10, 2, 100, 1});
    c.hash.push_back({"H", AlgorithmClass::Hash, 5, 1, 50, 1});
    c.key_exchange.push_back({"K", AlgorithmClass::KeyExchange, 1, 0.5, 10, 1});
    const auto s = compose_space<double>(c);
    CHECK(s.size() == 1);
    CHECK(s.averages(0) == s.maxima(0));
    CHECK(s.averages(0) == Approx(16.0));

    const auto r = select<double>(c, WeightVector<double>{0.2, 0.5, 0.3});
    CHECK(r.eligible_percent == Approx(100.0));
    CHECK(r.eligible.size() == 1);
    CHECK(r.best == r.worst);
    CHECK(r.best.esi == Approx(0.5)); // only the throughput term survives
}

TEST_CASE("esi at the normalization endpoints equals the throughput weight")
{
    const auto& s = space();
    for (const auto& w : {WeightVector<double>{1, 0, 0}, WeightVector<double>{0.2, 0.3, 0.5},
                          WeightVector<double>{0, 1, 0}}) {
        CHECK(esi(s.maxima, s.maxima, w) == Approx(w.throughput));
    }
}

TEST_CASE("esi of DES+MD5+RSA under equal weights")
{
    const auto& s = space();
    const double third = 1.0 / 3.0;
    const auto r = cell("DES+MD5+RSA");
    const double value = esi(s.cells.row(r), s.maxima, WeightVector<double>{third, third, third});
    // Frozen from an independent brute-force recomputation of the three terms.
    CHECK(value == Approx(0.6243457145941347).epsilon(1e-12));
    CHECK(value == Approx(0.624).epsilon(1e-3));

    const auto n = oracle::select(oracle::read_catalog(embedded::default_catalog_csv()), third, third, third);
    CHECK(value == Approx(n.esi[std::size_t(r)]).epsilon(1e-12));
}

TEST_CASE("power priority makes Idea+MD5+RSA the top suite")
{
    const auto values = esi_values(space(), WeightVector<double>{1, 0, 0});
    Eigen::Index best = 0;
    values.maxCoeff(&best);
    CHECK(best == cell("Idea+MD5+RSA"));
}

TEST_CASE("esi_threshold anchors")
{
    const auto& s = space();
    CHECK(esi_threshold(s, WeightVector<double>{1, 0, 0}) == Approx(0.3098).epsilon(0.0005 / 0.3098));
    CHECK(esi_threshold(s, WeightVector<double>{0, 0, 1}) == Approx(0.3384).epsilon(0.0005 / 0.3384));
    CHECK(std::abs(esi_threshold(s, WeightVector<double>{0.333, 0.333, 0.333}) - 0.3398) <= 0.01);
    // Frozen brute-force values.
    CHECK(esi_threshold(s, WeightVector<double>{1, 0, 0}) == Approx(0.30979720683775136).epsilon(1e-12));
    CHECK(esi_threshold(s, WeightVector<double>{0, 1, 0}) == Approx(0.37820443287413685).epsilon(1e-12));
    CHECK(esi_threshold(s, WeightVector<double>{0, 0, 1}) == Approx(0.33838090942285803).epsilon(1e-12));
}

TEST_CASE("select on published rows")
{
    const auto& c = default_catalog();
    auto r = select<double>(c, WeightVector<double>{0.333, 0.333, 0.333});
    CHECK(same_suite_label(label(r.best), "DES+MD5+RSA"));
    CHECK(same_suite_label(label(r.worst), "AES+SHA256+DH_RSA"));

    r = select<double>(c, WeightVector<double>{0, 1, 0});
    CHECK(same_suite_label(label(r.best), "DES+SHA512+RSA"));
    CHECK(std::abs(r.eligible_percent - 38.1) <= 100.0 / 63.0 + 1e-9); // within one cell
    CHECK(r.eligible.size() == 25);

    r = select<double>(c, WeightVector<double>{0, 0, 1});
    CHECK(same_suite_label(label(r.best), "Grain+MD5+RSA"));
    CHECK(same_suite_label(label(r.worst), "AES+SHA512+DH_RSA"));
}

TEST_CASE("report structure invariants")
{
    std::mt19937_64 rng(11);
    const auto& s = space();
    for (int trial = 0; trial < 50; ++trial) {
        const auto w = random_weights(rng);
        const auto r = select(s, w);
        const auto values = esi_values(s, w);
        std::set<Eigen::Index> listed;
        for (std::size_t e = 0; e < r.eligible.size(); ++e) {
            const auto& suite = r.eligible[e];
            CHECK(suite.esi >= r.esi_t);
            listed.insert(s.index(suite.enc_index, suite.hash_index, suite.kex_index));
            if (e > 0) {
                CHECK(r.eligible[e - 1].esi >= suite.esi);
            }
        }
        for (Eigen::Index row = 0; row < s.size(); ++row) {
            if (!listed.count(row)) {
                CHECK(values(row) < r.esi_t);
            }
        }
        CHECK(r.eligible.front() == r.best);
        CHECK(r.eligible_percent == Approx(100.0 * double(r.eligible.size()) / 63.0));
        CHECK(r.worst.esi == Approx(values.minCoeff()));
    }
}

TEST_CASE("ties resolve to the lowest (i, j, k)")
{
    MetricCatalog c;
    c.encryption.push_back({"A", AlgorithmClass::Encryption, 10, 1, 10, 1});
    c.encryption.push_back({"B", AlgorithmClass::Encryption, 10, 1, 10, 1});
    c.hash.push_back({"H", AlgorithmClass::Hash, 1, 1, 1, 1});
    c.key_exchange.push_back({"K", AlgorithmClass::KeyExchange, 1, 1, 1, 1});
    const auto r = select<double>(c, WeightVector<double>{0.2, 0.4, 0.4});
    CHECK(r.best.enc_index == 0);
    CHECK(r.worst.enc_index == 0);
    CHECK(r.eligible.size() == 2);
    CHECK(r.eligible[0].enc_index == 0);
    CHECK(r.eligible[1].enc_index == 1);
}

TEST_CASE("degenerate power column contributes nothing")
{
    MetricCatalog c;
    c.encryption.push_back({"A", AlgorithmClass::Encryption, 10, 1, 10, 1});
    c.encryption.push_back({"B", AlgorithmClass::Encryption, 10, 3, 20, 1});
    c.hash.push_back({"H", AlgorithmClass::Hash, 5, 1, 1, 1});
    c.key_exchange.push_back({"K", AlgorithmClass::KeyExchange, 5, 1, 1, 1});
    const auto s = compose_space<double>(c);
    const auto v = esi_values(s, WeightVector<double>{1, 0, 0});
    CHECK(v(0) == 0.0);
    CHECK(v(1) == 0.0);
}

TEST_CASE("boundedness and weight specialization")
{
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 40; ++trial) {
        const auto c = random_catalog(rng, 5);
        const auto s = compose_space<double>(c);
        const auto w = random_weights(rng);
        const auto v = esi_values(s, w);
        CHECK(v.minCoeff() >= -1e-12);
        CHECK(v.maxCoeff() <= 1.0 + 1e-12);

        const double third = 1.0 / 3.0;
        const auto equal = esi_values(s, WeightVector<double>{third, third, third});
        const auto unweighted = unweighted_esi_values(s);
        CHECK(((equal - unweighted / 3.0).abs() <= 1e-12).all());
    }
}

TEST_CASE("monotonicity with maxima held fixed")
{
    const auto& s = space();
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> frac(0.01, 0.99);
    for (int trial = 0; trial < 100; ++trial) {
        const auto w = random_weights(rng);
        const Eigen::Index row = std::uniform_int_distribution<Eigen::Index>(0, s.size() - 1)(rng);
        const Eigen::Array<double, 1, 3> base = s.cells.row(row);
        const double v = esi(base, s.maxima, w);

        Eigen::Array<double, 1, 3> lower_power = base;
        lower_power(0) *= frac(rng);
        CHECK(esi(lower_power, s.maxima, w) >= v);

        Eigen::Array<double, 1, 3> lower_resource = base;
        lower_resource(2) *= frac(rng);
        CHECK(esi(lower_resource, s.maxima, w) >= v);

        Eigen::Array<double, 1, 3> higher_tput = base;
        higher_tput(1) += (s.maxima(1) - base(1)) * frac(rng);
        CHECK(esi(higher_tput, s.maxima, w) >= v);
    }
}

TEST_CASE("mean-threshold identity on random catalogs")
{
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 40; ++trial) {
        const auto c = random_catalog(rng, 6);
        const auto s = compose_space<double>(c);
        const auto w = random_weights(rng);
        const double t = esi_threshold(s, w);
        const double mean = esi_values(s, w).mean();
        CHECK(std::abs(t - mean) <= 1e-9 * std::max(std::abs(mean), 1e-300));
        CHECK_FALSE(select(s, w).eligible.empty());
    }
}

TEST_CASE("scale invariance of every cell score")
{
    std::mt19937_64 rng(23);
    std::uniform_real_distribution<double> logc(-3.0, 3.0);
    const auto& base = default_catalog();
    for (int trial = 0; trial < 30; ++trial) {
        const auto w = random_weights(rng);
        const double factor = std::pow(10.0, logc(rng));
        for (int column = 0; column < 3; ++column) {
            auto scaled = base;
            for (auto cls : {AlgorithmClass::Encryption, AlgorithmClass::Hash, AlgorithmClass::KeyExchange}) {
                for (auto& a : scaled.list(cls)) {
                    if (column == 0) {
                        a.power_mw *= factor;
                    } else if (column == 1) {
                        a.throughput_gbps *= factor;
                    }
                }
            }
            // Slices are integers in the catalog; scale the composed matrix directly.
            auto s1 = compose_space<double>(base);
            auto s2 = compose_space<double>(scaled);
            if (column == 2) {
                s2.cells.col(2) *= factor;
                s2.maxima(2) *= factor;
                s2.averages(2) *= factor;
            }
            const auto v1 = esi_values(s1, w);
            const auto v2 = esi_values(s2, w);
            CHECK(((v1 - v2).abs() <= 1e-9).all());
        }
    }
}

TEST_CASE("oracle agreement on random weights")
{
    const auto naive_catalog = oracle::read_catalog(embedded::default_catalog_csv());
    std::mt19937_64 rng(29);
    for (int trial = 0; trial < 100; ++trial) {
        const auto w = random_weights(rng);
        const auto r = select(space(), w);
        const auto n = oracle::select(naive_catalog, w.power, w.throughput, w.resource);
        CHECK(std::abs(r.esi_t - n.esi_t) <= 1e-9 * std::abs(n.esi_t));
        CHECK(label(r.best) == n.labels[std::size_t(n.best)]);
        CHECK(label(r.worst) == n.labels[std::size_t(n.worst)]);
        std::set<std::string> mine, theirs;
        for (const auto& s : r.eligible) {
            mine.insert(label(s));
        }
        for (int x : n.eligible) {
            theirs.insert(n.labels[std::size_t(x)]);
        }
        CHECK(mine == theirs);
    }
}

TEST_CASE("float instantiation agrees with double")
{
    const auto sf = compose_space<float>(default_catalog());
    const auto wf = WeightVector<float>{0.5f, 0.25f, 0.25f};
    const auto rf = select(sf, wf);
    const auto rd = select(space(), wf.cast<double>());
    CHECK(rf.best.enc_index == rd.best.enc_index);
    CHECK(double(rf.esi_t) == Approx(rd.esi_t).epsilon(1e-5));
}

TEST_CASE("bottleneck throughput composition is opt-in")
{
    const auto additive = compose_space<double>(default_catalog());
    const auto bottleneck = compose_space<double>(default_catalog(), ThroughputComposition::Bottleneck);
    const auto r = cell("DES+MD5+RSA");
    CHECK(additive.cells(r, 1) == Approx(8.664));
    CHECK(bottleneck.cells(r, 1) == Approx(0.298));
    CHECK(bottleneck.cells(r, 0) == additive.cells(r, 0));
}

TEST_CASE("sweep preserves order and handles empty input")
{
    const auto& c = default_catalog();
    CHECK(sweep<double>(c, std::span<const WeightVector<double>>{}).empty());
    const auto reports = sweep<double>(c, table1_weights());
    REQUIRE(reports.size() == 46);
    CHECK(same_suite_label(label(reports[4].best), "DES+MD5+RSA"));
    CHECK(same_suite_label(label(reports[4].worst), "AES+SHA512+DH_RSA"));
    CHECK(std::abs(reports[1].eligible_percent - 71.4) <= 0.1);
    for (std::size_t i = 0; i < reports.size(); ++i) {
        CHECK(reports[i].weights == table1_weights()[i]);
    }
}

TEST_CASE("sweep is deterministic")
{
    const auto a = sweep<double>(default_catalog(), table1_weights());
    const auto b = sweep<double>(default_catalog(), table1_weights());
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].esi_t == b[i].esi_t);
        CHECK(a[i].eligible == b[i].eligible);
    }
}

TEST_CASE("budget filter")
{
    const auto r = select<double>(default_catalog(), WeightVector<double>{1.0 / 3, 1.0 / 3, 1.0 / 3});

    CHECK_THROWS_AS(filter_by_budget(r, MetricBudget<double>{}), std::invalid_argument);

    SUBCASE("power cap keeps eligible suites at or below it")
    {
        const auto out = filter_by_budget(r, MetricBudget<double>{2000.0, {}, {}});
        REQUIRE(std::holds_alternative<std::vector<SuiteComposition<double>>>(out));
        const auto& suites = std::get<0>(out);
        std::set<std::string> names;
        for (const auto& s : suites) {
            CHECK(s.power <= 2000.0);
            names.insert(label(s));
        }
        CHECK(names.count("DES+MD5+RSA") == 1);
        // Brute-force count of eligible suites at or under 2000 mW.
        CHECK(suites.size() == 18);
    }

    SUBCASE("unreachable throughput reports the best achievable value")
    {
        const auto out = filter_by_budget(r, MetricBudget<double>{{}, 20.0, {}});
        REQUIRE(std::holds_alternative<BudgetInfeasible<double>>(out));
        const auto& relax = std::get<1>(out).relaxations;
        REQUIRE(relax.size() == 1);
        CHECK(relax[0].bound == BudgetBound::MinThroughput);
        CHECK(relax[0].requested == 20.0);
        CHECK(relax[0].required == Approx(9.219));
        CHECK(relax[0].sufficient);
        CHECK(same_suite_label(label(relax[0].witness), "DES+SHA512+RSA"));
    }

    SUBCASE("jointly infeasible bounds report each relaxation with the others fixed")
    {
        const auto out = filter_by_budget(r, MetricBudget<double>{400.0, {}, 1000.0});
        REQUIRE(std::holds_alternative<BudgetInfeasible<double>>(out));
        const auto& relax = std::get<1>(out).relaxations;
        REQUIRE(relax.size() == 2);
        for (const auto& x : relax) {
            CHECK_FALSE(x.sufficient);
        }
    }
}
