#include "ulindley/dataset.hpp"
#include "ulindley/errors.hpp"

#include <gtest/gtest.h>

#include <sstream>

using namespace ulindley;

namespace {

std::optional<std::size_t> error_line(const std::string& csv, const CsvOptions& options) {
    std::istringstream in(csv);
    try {
        load_csv(in, options);
    } catch (const DataError& e) {
        return e.location();
    }
    return std::nullopt;
}

CsvOptions by_name(const std::string& name, Scale scale = Scale::Unit, char delimiter = ',') {
    return {name, scale, delimiter};
}

}  // namespace

TEST(LoadCsv, CountsEndpointsInTheSmallFixture) {
    const Dataset data = load_csv(ULINDLEY_DATA_DIR "/small_fixture.csv", by_name("pass_proportion"));
    EXPECT_EQ(data.values.n(), 10u);
    EXPECT_EQ(data.values.zeros(), 2u);
    EXPECT_EQ(data.values.ones(), 1u);
    EXPECT_EQ(data.column, "pass_proportion");
}

TEST(LoadCsv, PercentScaleAndCustomDelimiter) {
    const Dataset data = load_csv(ULINDLEY_DATA_DIR "/percent_fixture.csv", by_name("passed_pct", Scale::Percent, ';'));
    EXPECT_EQ(data.values.ones(), 2u);
    EXPECT_EQ(data.values.zeros(), 1u);
    EXPECT_EQ(data.values.values()[0], 1.0);
    EXPECT_DOUBLE_EQ(data.values.values()[2], 0.575);
}

TEST(LoadCsv, ExactEndpointSpellings) {
    std::istringstream in("y\n0\n1\n0.0\n1.0\n0.999\n");
    const Dataset data = load_csv(in, {std::size_t{0}, Scale::Unit, ','});
    EXPECT_EQ(data.values.zeros(), 2u);
    EXPECT_EQ(data.values.ones(), 2u);
    EXPECT_EQ(data.values.interior(), 1u);
}

TEST(LoadCsv, ColumnByIndex) {
    std::istringstream in("id,y\na,0.25\nb,0\n");
    const Dataset data = load_csv(in, {std::size_t{1}, Scale::Unit, ','});
    EXPECT_EQ(data.values.values()[0], 0.25);
    EXPECT_EQ(data.column, "y");
}

TEST(LoadCsv, ErrorsCarryTheFileLine) {
    const CsvOptions options = by_name("y");
    EXPECT_EQ(error_line("y\n0.5\n1.2\n", options), 3u);
    EXPECT_EQ(error_line("y\n0.5\n\n-0.1\n", options), 4u);
    EXPECT_EQ(error_line("y\n0.5\nabc\n", options), 3u);
    EXPECT_EQ(error_line("y\n0.5x\n", options), 2u);
    EXPECT_EQ(error_line("y\nnan\n", options), 2u);
    EXPECT_EQ(error_line("id,y\na,0.2\nb\n", by_name("y")), 3u);
    EXPECT_EQ(error_line("y\n150\n", {std::string("y"), Scale::Percent, ','}), 2u);
}

TEST(LoadCsv, StructuralErrors) {
    std::istringstream missing("a,b\n0.1,0.2\n");
    EXPECT_THROW(load_csv(missing, by_name("y")), DataError);
    std::istringstream empty("y\n\n");
    EXPECT_THROW(load_csv(empty, by_name("y")), DataError);
    std::istringstream nothing("");
    EXPECT_THROW(load_csv(nothing, by_name("y")), DataError);
    std::istringstream index("y\n0.1\n");
    EXPECT_THROW(load_csv(index, {std::size_t{3}, Scale::Unit, ','}), DataError);
    EXPECT_THROW(load_csv(std::string("/nonexistent/file.csv"), by_name("y")), DataError);
}

TEST(LoadCsv, MessageNamesTheRow) {
    std::istringstream in("y\n0.5\n1.2\n");
    try {
        load_csv(in, by_name("y"));
        FAIL();
    } catch (const DataError& e) {
        EXPECT_NE(std::string(e.what()).find("line 3"), std::string::npos);
    }
}
