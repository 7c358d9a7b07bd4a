#include "helpers.hpp"
#include "vtask/paper.hpp"

#include <gtest/gtest.h>

using namespace vtask;
using namespace testing_support;
using paper::f;

namespace {

Program lit(const char * text)
{
    return parse_program_literal(text, StateSpace(static_cast<unsigned>(std::string(text).size())));
}

Statement st(std::initializer_list<unsigned> fs)
{
    Statement s;
    for (auto i : fs)
        s = s.with(f(i));
    return s;
}

} // namespace

TEST(Program, LiteralReadsLeftmostAsStateOne)
{
    const Program p = lit("01111");
    EXPECT_FALSE(p.has_state(0));
    EXPECT_TRUE(p.has_state(4));
    EXPECT_EQ(p.cardinality(), 4U);
    EXPECT_EQ(p.literal(), "01111");
}

TEST(Program, CanonicalOrderFollowsLiteral)
{
    EXPECT_LT(lit("01111"), lit("10111"));
    EXPECT_LT(lit("10111"), lit("11011"));
    EXPECT_LT(lit("11011"), lit("11101"));
    EXPECT_LT(lit("00"), lit("01"));
    EXPECT_LT(lit("01"), lit("10"));
    EXPECT_THROW(Program(0b100, 2), MalformedInputError);
    EXPECT_THROW(StateSpace(0), MalformedInputError);
    EXPECT_THROW(StateSpace(65), MalformedInputError);
}

TEST(IntersectPrograms, Examples)
{
    const StateSpace five(5);
    EXPECT_EQ(intersect_programs({lit("01111"), lit("10111")}, five).literal(), "00111");
    EXPECT_EQ(intersect_programs(std::span<const Program>{}, five).literal(), "11111");
    EXPECT_EQ(intersect_programs({lit("01111"), lit("10111"), lit("11011"), lit("11101")}, five).literal(), "00001");
}

TEST(IntersectPrograms, WidthMismatchIsMalformed)
{
    EXPECT_THROW(intersect_programs({lit("0111")}, StateSpace(5)), MalformedInputError);
}

TEST(IsStatement, Examples)
{
    const Vocabulary v = paper::alpha_vocabulary();
    EXPECT_TRUE(is_statement(st({1, 2, 3, 4}), v));
    EXPECT_TRUE(is_statement(Statement{}, v));

    const Vocabulary pair(StateSpace(2), {lit("01"), lit("10")});
    EXPECT_FALSE(is_statement(Statement::of({0, 1}), pair));
    const std::size_t both[] = {0, 1};
    EXPECT_FALSE(is_statement(both, pair));
}

TEST(IsStatement, OutOfRangeIndexIsMalformed)
{
    const Vocabulary pair(StateSpace(2), {lit("01"), lit("10")});
    const std::size_t bad[] = {2};
    EXPECT_THROW(is_statement(bad, pair), MalformedInputError);
    EXPECT_THROW(is_statement(Statement::of({5}), pair), MalformedInputError);
}

TEST(Vocabulary, RejectsDuplicatesWidthAndSize)
{
    EXPECT_THROW(Vocabulary(StateSpace(2), {lit("01"), lit("01")}), MalformedInputError);
    EXPECT_THROW(Vocabulary(StateSpace(3), {lit("01")}), MalformedInputError);
    std::vector<Program> many;
    for (std::uint64_t b = 0; b < 21; ++b)
        many.emplace_back(b, 5);
    try {
        Vocabulary too_big(StateSpace(5), many);
        FAIL() << "expected a capacity error";
    } catch (const CapacityError & e) {
        EXPECT_NE(std::string(e.what()).find("cap is 20"), std::string::npos);
    }
}

TEST(BuildLanguage, PaperVocabularyHasSixteenStatements)
{
    const Language lang = build_language(paper::alpha_vocabulary());
    EXPECT_EQ(lang.size(), 16U);
    EXPECT_EQ(lang.at(0), Statement{});
    EXPECT_TRUE(std::is_sorted(lang.statements().begin(), lang.statements().end()));
}

TEST(BuildLanguage, EmptyVocabulary)
{
    const Language lang = build_language(Vocabulary(StateSpace(3), {}));
    ASSERT_EQ(lang.size(), 1U);
    EXPECT_EQ(lang.at(0), Statement{});
}

TEST(BuildLanguage, DisjointPairDropsTheirUnion)
{
    const Vocabulary v(StateSpace(2), {lit("01"), lit("10")});
    const Language lang = build_language(v);
    // definitional filter over all 4 subsets
    const oracle::StmtSet expected = oracle::language({"01", "10"}, 2);
    ASSERT_EQ(expected.size(), 3U);
    EXPECT_EQ(to_oracle(lang.all(), lang), expected);
    EXPECT_FALSE(lang.contains(Statement::of({0, 1})));
}

TEST(Extension, OfStatementExamples)
{
    const Language lang = build_language(paper::alpha_vocabulary());
    EXPECT_EQ(extension_of_statement(st({1, 2}), lang),
              lang.make_set({st({1, 2}), st({1, 2, 3}), st({1, 2, 4}), st({1, 2, 3, 4})}));
    EXPECT_EQ(extension_of_statement(Statement{}, lang), lang.all());
    EXPECT_EQ(extension_of_statement(st({2, 3}), lang),
              lang.make_set({st({2, 3}), st({1, 2, 3}), st({2, 3, 4}), st({1, 2, 3, 4})}));
}

TEST(Extension, NonMemberIsDomainError)
{
    const Vocabulary v(StateSpace(2), {lit("01"), lit("10")});
    const Language lang = build_language(v);
    EXPECT_THROW(extension_of_statement(Statement::of({0, 1}), lang), DomainError);
    const Statement xs[] = {Statement::of({0, 1})};
    EXPECT_THROW(extension_of_set(xs, lang), DomainError);
}

TEST(Extension, OfSetExamples)
{
    const Language lang = build_language(paper::alpha_vocabulary());
    const auto e_in = extension_of_set(paper::alpha_inputs(), lang);
    EXPECT_EQ(e_in, lang.make_set({st({1}), st({2}), st({1, 2}), st({1, 3}), st({1, 4}), st({2, 3}), st({2, 4}),
                                   st({1, 2, 3}), st({1, 3, 4}), st({1, 2, 4}), st({2, 3, 4}), st({1, 2, 3, 4})}));
    EXPECT_EQ(e_in.size(), 12U);

    EXPECT_TRUE(extension_of_set(lang.none(), lang).empty());

    // listed with 8 entries, two of them repeated
    const Statement both[] = {st({1, 2}), st({2, 3})};
    const auto u = extension_of_set(both, lang);
    EXPECT_EQ(u, extension_of_statement(st({1, 2}), lang) | extension_of_statement(st({2, 3}), lang));
    EXPECT_EQ(u, lang.make_set({st({1, 2}), st({1, 2, 3}), st({1, 2, 4}), st({1, 2, 3, 4}), st({2, 3}),
                                st({2, 3, 1}), st({2, 3, 4}), st({2, 3, 1, 4})}));
    EXPECT_EQ(u.size(), 6U);
}

TEST(StatementSet, Algebra)
{
    StatementSet a(70), b(70);
    a.insert(1);
    a.insert(65);
    b.insert(65);
    EXPECT_EQ((a & b).positions(), std::vector<std::size_t>{65});
    EXPECT_EQ((a | b).size(), 2U);
    EXPECT_EQ((a - b).positions(), std::vector<std::size_t>{1});
    EXPECT_TRUE(b.is_subset_of(a));
    EXPECT_FALSE(a.is_subset_of(b));
    EXPECT_EQ(StatementSet::full(70).size(), 70U);
    EXPECT_TRUE(StatementSet(70).empty());
}

// Properties over random vocabularies, checked against the definitional filter.

TEST(CoreModelProperties, LanguageMatchesDefinitionalFilter)
{
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 300; ++trial) {
        const Vocabulary v = random_vocabulary(rng, 1, 6, 6);
        const Language lang = build_language(v);
        EXPECT_EQ(to_oracle(lang.all(), lang), oracle_language(v));
    }
}

TEST(CoreModelProperties, LatticeLaws)
{
    std::mt19937_64 rng(12);
    for (int trial = 0; trial < 200; ++trial) {
        const Vocabulary v = random_vocabulary(rng, 1, 8, 6);
        const Language lang = build_language(v);

        EXPECT_EQ(intersect_programs(std::span<const Program>{}, v.space()), Program::all_states(v.space()));
        ASSERT_TRUE(lang.contains(Statement{}));
        EXPECT_EQ(extension_of_statement(Statement{}, lang), lang.all());

        std::vector<StatementSet> ext;
        for (auto x : lang.statements())
            ext.push_back(extension_of_statement(x, lang));

        for (std::size_t i = 0; i < lang.size(); ++i) {
            const Statement x = lang.at(i);
            EXPECT_TRUE(ext[i].contains(i));
            // downward closure
            for (Statement::mask_type m = x.mask();; m = (m - 1) & x.mask()) {
                EXPECT_TRUE(lang.contains(Statement(m)));
                if (m == 0)
                    break;
            }
            // antitone extensions
            for (std::size_t j = 0; j < lang.size(); ++j)
                if (x.is_subset_of(lang.at(j))) {
                    EXPECT_TRUE(ext[j].is_subset_of(ext[i]));
                }
        }
    }
}

TEST(CoreModelProperties, ExtensionMatchesDefinition)
{
    std::mt19937_64 rng(13);
    for (int trial = 0; trial < 100; ++trial) {
        const Vocabulary v = random_vocabulary(rng, 1, 5, 5);
        const Language lang = build_language(v);
        const auto ol = oracle_language(v);
        for (auto x : lang.statements())
            EXPECT_EQ(to_oracle(extension_of_statement(x, lang), lang), oracle::extension(to_oracle(x, v), ol));
    }
}
