#include <doctest.h>

#include <anosovkit/errors.hpp>
#include <anosovkit/flags.hpp>

#include "../support/bridge.hpp"

using namespace anosovkit;

namespace {

std::shared_ptr<const WeylGroup> group(const char* t) {
    return std::make_shared<const WeylGroup>(generate_weyl_group(build_root_system(parse_simple_type(t))));
}

FlagConfiguration config(const char* t, const char* pa, const char* pd, bool allow = false) {
    auto w = group(t);
    return build_flag_configuration(w, parse_theta(pa, w->rank()), parse_theta(pd, w->rank()), allow);
}

// |Phi+| minus the positive roots supported on theta.
int n_oracle(const SimpleType& t, const Theta& theta) {
    auto pos = oracle::positive_roots(oracle::cartan(static_cast<char>(t.family), t.rank));
    int levi = 0;
    for (const auto& r : pos) {
        bool inside = true;
        for (std::size_t i = 0; i < r.size(); ++i)
            if (r[i] && std::find(theta.begin(), theta.end(), static_cast<int>(i)) == theta.end()) inside = false;
        levi += inside;
    }
    return static_cast<int>(pos.size()) - levi;
}

std::vector<Theta> proper_subsets(int rank) {
    std::vector<Theta> out;
    for (unsigned m = 0; m + 1 < (1u << rank); ++m) {
        Theta t;
        for (int i = 0; i < rank; ++i)
            if (m >> i & 1u) t.push_back(i);
        out.push_back(t);
    }
    return out;
}

}  // namespace

TEST_SUITE("flags") {
    TEST_CASE("examples") {
        auto a2 = config("A2", "", "");
        CHECK(a2.flag_dimension() == 3);
        CHECK(a2.cosets().size() == 6);
        auto a3 = config("A3", "", "2");
        CHECK(a3.cosets().size() == 12);
        CHECK(a3.flag_dimension() == 5);
        CHECK(flag_dimension(config("A1", "", "")) == 1);
        CHECK(flag_dimension(config("B2", "", "")) == 4);
        for (int n = 2; n <= 6; ++n) {
            std::string t = "A" + std::to_string(n), pd;
            for (int i = 2; i < n; ++i) pd += (pd.empty() ? "" : ",") + std::to_string(i);
            CHECK(config(t.c_str(), "", pd.c_str()).flag_dimension() == 2 * n - 1);
        }
    }

    TEST_CASE("symmetric parabolics") {
        CHECK(is_symmetric_parabolic(*group("A2"), {}));
        CHECK_FALSE(is_symmetric_parabolic(*group("A2"), {0}));
        CHECK(is_symmetric_parabolic(*group("B2"), {0}));
        CHECK(is_symmetric_parabolic(*group("A3"), {1}));
        CHECK(is_symmetric_parabolic(*group("A3"), {0, 2}));
        CHECK_FALSE(is_symmetric_parabolic(*group("A3"), {0}));
        CHECK_FALSE(is_symmetric_parabolic(*group("D5"), {3}));
        CHECK(is_symmetric_parabolic(*group("D4"), {3}));
    }

    TEST_CASE("non-symmetric theta_A is rejected unless overridden") {
        CHECK_THROWS_AS(config("A2", "1", ""), ValidationError);
        try {
            config("A2", "1", "");
        } catch (const ValidationError& e) {
            CHECK(std::string(e.what()).find("symmetric") != std::string::npos);
        }
        auto fc = config("A2", "1", "", true);
        CHECK_FALSE(fc.theta_a_symmetric());
    }

    TEST_CASE("theta parsing and range checks") {
        CHECK(parse_theta("", 3).empty());
        CHECK(parse_theta("3,1", 3) == Theta{0, 2});
        CHECK(format_theta({0, 2}) == "1,3");
        CHECK_THROWS(parse_theta("4", 3));
        CHECK_THROWS(parse_theta("0", 3));
        CHECK_THROWS(parse_theta("x", 3));
        CHECK_THROWS_AS(config("A2", "", "1,2"), ValidationError);
    }

    TEST_CASE("coset structure against minimal lengths, |W| <= 48") {
        for (const char* t : {"A3", "B3", "C3", "G2", "B2"}) {
            auto w = group(t);
            for (const auto& pd : proper_subsets(w->rank())) {
                CAPTURE(t);
                CAPTURE(format_theta(pd));
                auto fc = build_flag_configuration(w, {}, pd);
                CHECK(fc.flag_dimension() == n_oracle(w->root_system().type(), pd));
                std::map<ElementId, std::size_t> sizes;
                for (ElementId x = 0; x < w->size(); ++x) ++sizes[fc.coset_of(x)];
                CHECK(sizes.size() == fc.cosets().size());
                for (auto [rep, n] : sizes) CHECK(n == fc.coset_size());
                CHECK(fc.coset_size() * fc.cosets().size() == w->size());
                for (ElementId rep : fc.cosets()) {
                    int m = 1 << 20;
                    for (ElementId x = 0; x < w->size(); ++x)
                        if (fc.coset_of(x) == rep) m = std::min(m, w->length(x));
                    CHECK(m == w->length(rep));
                }
                int maxima = 0;
                for (ElementId rep : fc.cosets()) {
                    bool maximal = true;
                    for (ElementId other : fc.cosets())
                        if (other != rep && w->bruhat_leq(rep, other)) maximal = false;
                    if (maximal) {
                        ++maxima;
                        CHECK(w->length(rep) == fc.flag_dimension());
                        CHECK(rep == fc.coset_of(w->w0()));
                    }
                }
                CHECK(maxima == 1);
            }
        }
    }

    TEST_CASE("N for every parabolic up to rank 5") {
        for (const auto& t : all_simple_types(5)) {
            if (weyl_group_order(t) > 4000) continue;
            auto w = std::make_shared<const WeylGroup>(generate_weyl_group(build_root_system(t)));
            for (const auto& pd : proper_subsets(t.rank)) {
                CAPTURE(t.name());
                CHECK(build_flag_configuration(w, {}, pd).flag_dimension() == n_oracle(t, pd));
            }
        }
    }
}
