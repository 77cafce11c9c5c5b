#include <random>
#include <sstream>

#include "doctest.h"
#include "oscprop/csv_io.hpp"

using namespace oscprop;

TEST_CASE("format_double keeps 17 significant digits") {
    CHECK(format_double(0.1) == "0.10000000000000001");
    CHECK(format_double(-2.5) == "-2.5");
    CHECK(format_double(1e-5) == "1.0000000000000001e-05");
    CHECK(format_double(1e-300) == "1e-300");
}

TEST_CASE("csv round trip renders bitwise equal") {
    std::mt19937 rng(5);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (auto [lo, hi, n] : {std::tuple{-6.0, 6.0, 256}, std::tuple{-1.3, 2.7, 100}, std::tuple{0.1, 0.7, 33}}) {
        const auto g = make_grid(lo, hi, n);
        const auto f = SampledFunction::sample(g, [&](double) { return complex(u(rng), u(rng)); });
        std::stringstream first;
        write_function_csv(f, first);
        const auto back = read_function_csv(first);
        std::stringstream second;
        write_function_csv(back, second);
        CHECK(first.str() == second.str());
        CHECK(relative_l2_error(back, f) == 0.0);
    }
}

TEST_CASE("csv without im column") {
    std::stringstream in("x,re\n0,1\n0.5,2\n1,3\n1.5,4\n2,5\n2.5,6\n3,7\n3.5,8\n");
    const auto f = read_function_csv(in);
    CHECK(f.size() == 8);
    CHECK(f[3] == complex(4.0, 0.0));
    CHECK(f.grid().spacing() == 0.5);
}

TEST_CASE("csv errors") {
    std::stringstream no_header("0,1,0\n1,1,0\n");
    CHECK_THROWS_WITH_AS(read_function_csv(no_header), doctest::Contains("missing header"), PreconditionError);

    std::stringstream uneven("x,re,im\n0,1,0\n1,1,0\n2,1,0\n3.5,1,0\n4,1,0\n5,1,0\n6,1,0\n7,1,0\n");
    CHECK_THROWS_WITH_AS(read_function_csv(uneven), doctest::Contains("line 5"), PreconditionError);

    std::stringstream garbage("x,re,im\n0,1,0\n1,abc,0\n");
    CHECK_THROWS_WITH_AS(read_function_csv(garbage), doctest::Contains("line 3"), PreconditionError);

    std::stringstream short_rows("x,re,im\n0,1\n");
    CHECK_THROWS_AS(read_function_csv(short_rows), PreconditionError);

    CHECK_THROWS_AS(read_function_csv(std::string("/nonexistent/file.csv")), PreconditionError);
}

TEST_CASE("kernel csv") {
    std::stringstream out;
    write_kernel_csv(make_grid(0.0, 1.0, 8), [](double x, double xp) { return x + xp; }, out);
    std::string line;
    std::getline(out, line);
    CHECK(line == "x,xp,value");
    int rows = 0;
    while (std::getline(out, line)) ++rows;
    CHECK(rows == 64);
}
