#include "helpers.hpp"
#include "vtask/paper.hpp"

#include <gtest/gtest.h>

#include <fstream>
#include <numeric>
#include <set>
#include <sstream>

using namespace vtask;
using namespace testing_support;

namespace {

Program lit(const char * text)
{
    return parse_program_literal(text, StateSpace(static_cast<unsigned>(std::string(text).size())));
}

std::string encoding_error(const ClassificationSpec & spec)
{
    try {
        encode_classification(spec);
    } catch (const EncodingError & e) {
        return e.what();
    }
    ADD_FAILURE() << "expected an encoding error";
    return {};
}

ClassificationSpec two_feature_spec()
{
    return {StateSpace(4), {{"a", lit("0111")}, {"b", lit("1011")}}, {{"yes", lit("1101")}}, {{{"a", "b"}, "yes"}}};
}

} // namespace

TEST(Encoder, ColoredBoxIsTheCounterexample)
{
    const EncodedTask enc = encode_classification(paper::colored_box_spec());
    EXPECT_EQ(enc.task.inputs().size(), 2U);
    EXPECT_EQ(enc.task.outputs().size(), 2U);
    EXPECT_EQ(enc.labels.size(), 2U);
    EXPECT_TRUE(find_correct_policies(enc.task).correct.empty());
    EXPECT_TRUE(verify_isomorphism(enc.task, paper::alpha_task()));
    // the encoding is not literally α: its states are listed in another order
    EXPECT_NE(snapshot(enc.task), snapshot(paper::alpha_task()));
}

TEST(Encoder, TwoFeatureExampleIsSolvable)
{
    const EncodedTask enc = encode_classification(two_feature_spec());
    ASSERT_EQ(enc.task.input_statements().size(), 1U);
    EXPECT_EQ(enc.task.input_statements()[0].size(), 2U);
    const auto r = find_correct_policies(enc.task);
    ASSERT_FALSE(r.correct.empty());
    EXPECT_EQ(r.correct.front().statement, enc.labels);
}

TEST(Encoder, ReadExamplesRecoversTheSpec)
{
    const auto spec = paper::colored_box_spec();
    const EncodedTask enc = encode_classification(spec);
    auto back = read_examples(enc);
    auto expected = spec.examples;
    std::sort(back.begin(), back.end(), [](auto & a, auto & b) { return a.label < b.label; });
    std::sort(expected.begin(), expected.end(), [](auto & a, auto & b) { return a.label < b.label; });
    EXPECT_EQ(back, expected);
}

TEST(Encoder, NamesFollowVocabularyOrder)
{
    const EncodedTask enc = encode_classification(paper::colored_box_spec());
    const auto & vocab = enc.language->vocabulary();
    ASSERT_EQ(enc.names.size(), 4U);
    for (std::size_t i = 0; i < vocab.size(); ++i) {
        const auto spec = paper::colored_box_spec();
        std::vector<NamedProgram> all = spec.features;
        all.insert(all.end(), spec.labels.begin(), spec.labels.end());
        auto it = std::find_if(all.begin(), all.end(), [&](auto & np) { return np.name == enc.names[i]; });
        ASSERT_NE(it, all.end());
        EXPECT_EQ(it->program, vocab[i]);
    }
}

TEST(Isomorphism, DifferentShapesAreNotIsomorphic)
{
    // three outputs against α's two
    auto lang = std::make_shared<const Language>(build_language(paper::alpha_vocabulary()));
    using paper::f;
    const std::vector<Statement> in{Statement::of({f(1)}), Statement::of({f(2)})};
    const std::vector<Statement> out{Statement::of({f(1), f(3)}), Statement::of({f(2), f(4)}),
                                     Statement::of({f(1), f(2)})};
    const Task three = validate_task(in, out, lang);
    EXPECT_FALSE(verify_isomorphism(three, paper::alpha_task()));
    EXPECT_TRUE(verify_isomorphism(paper::alpha_task(), paper::alpha_task()));
}

TEST(Isomorphism, StateSpaceMismatchIsDomainError)
{
    const EncodedTask enc = encode_classification(two_feature_spec());
    EXPECT_THROW(verify_isomorphism(enc.task, paper::alpha_task()), DomainError);
}

TEST(Isomorphism, AgreesWithOracleOrbitTest)
{
    std::mt19937_64 rng(51);
    for (int trial = 0; trial < 60; ++trial) {
        const Task a = draw_task(rng, 4, 3);
        // a permuted copy is always isomorphic
        std::vector<unsigned> perm(a.language().vocabulary().space().n_states());
        std::iota(perm.begin(), perm.end(), 0U);
        std::shuffle(perm.begin(), perm.end(), rng);
        const Task moved = restore(apply_permutation(snapshot(a), perm));
        EXPECT_TRUE(verify_isomorphism(a, moved));

        // an unrelated task over the same state count: compare with the oracle orbit
        Task b = draw_task(rng, 4, 3);
        if (b.language().vocabulary().space().n_states() != perm.size())
            continue;
        const auto va = a.language().vocabulary();
        const auto vb = b.language().vocabulary();
        const auto ia = to_oracle(a.input_statements(), va), oa = to_oracle(a.output_statements(), va);
        const auto ib = to_oracle(b.input_statements(), vb), ob = to_oracle(b.output_statements(), vb);
        std::vector<std::size_t> p(perm.size());
        std::iota(p.begin(), p.end(), 0U);
        bool expected = false;
        do {
            // vocabularies must map onto each other as well as I and O
            std::set<oracle::Literal> moved_vocab;
            for (const auto & l : literals(va))
                moved_vocab.insert(oracle::permute(l, p));
            const auto lb = literals(vb);
            expected |= moved_vocab == std::set<oracle::Literal>(lb.begin(), lb.end()) &&
                        oracle::permute(ia, p) == ib && oracle::permute(oa, p) == ob;
        } while (std::next_permutation(p.begin(), p.end()));
        EXPECT_EQ(verify_isomorphism(a, b), expected);
    }
}

TEST(EncoderErrors, Rejections)
{
    auto base = two_feature_spec;
    {
        auto s = base();
        s.labels[0].name = "a";
        EXPECT_NE(encoding_error(s).find("declared twice"), std::string::npos);
    }
    {
        auto s = base();
        s.labels[0].program = lit("0111");
        EXPECT_NE(encoding_error(s).find("identical"), std::string::npos);
    }
    {
        auto s = base();
        s.examples[0].features = {"a", "zz"};
        EXPECT_NE(encoding_error(s).find("'zz' is not a feature"), std::string::npos);
    }
    {
        auto s = base();
        s.examples[0].features = {"a", "yes"};
        EXPECT_NE(encoding_error(s).find("not a feature"), std::string::npos);
    }
    {
        auto s = base();
        s.examples[0].label = "a";
        EXPECT_NE(encoding_error(s).find("not a label"), std::string::npos);
    }
    {
        auto s = base();
        s.examples[0].features = {"a", "a"};
        EXPECT_NE(encoding_error(s).find("repeated"), std::string::npos);
    }
    {
        auto s = base();
        s.examples.push_back({{"b", "a"}, "yes"});
        EXPECT_NE(encoding_error(s).find("already labelled"), std::string::npos);
    }
    {
        ClassificationSpec s{StateSpace(2), {{"l", lit("10")}, {"r", lit("01")}}, {{"y", lit("11")}}, {{{"l", "r"}, "y"}}};
        EXPECT_NE(encoding_error(s).find("input is not a statement"), std::string::npos);
    }
    {
        ClassificationSpec s{StateSpace(2), {{"l", lit("10")}}, {{"y", lit("01")}}, {{{"l"}, "y"}}};
        EXPECT_NE(encoding_error(s).find("output is not a statement"), std::string::npos);
    }
}

TEST(EncoderProperties, RandomSpecsYieldValidTasksOrErrors)
{
    std::mt19937_64 rng(52);
    int encoded = 0;
    for (int trial = 0; trial < 400; ++trial) {
        const unsigned n = std::uniform_int_distribution<unsigned>(2, 6)(rng);
        const Vocabulary v = random_vocabulary(rng, n, n, 5);
        if (v.size() < 2)
            continue;
        const std::size_t n_labels = std::uniform_int_distribution<std::size_t>(1, v.size() - 1)(rng);
        ClassificationSpec spec{v.space(), {}, {}, {}};
        for (std::size_t i = 0; i < v.size(); ++i)
            (i < v.size() - n_labels ? spec.features : spec.labels).push_back({"p" + std::to_string(i), v[i]});
        std::bernoulli_distribution coin(0.5);
        const int n_examples = std::uniform_int_distribution<int>(1, 3)(rng);
        for (int e = 0; e < n_examples; ++e) {
            Example ex;
            for (const auto & fp : spec.features)
                if (coin(rng))
                    ex.features.push_back(fp.name);
            ex.label = spec.labels[std::uniform_int_distribution<std::size_t>(0, n_labels - 1)(rng)].name;
            spec.examples.push_back(ex);
        }
        try {
            const EncodedTask enc = encode_classification(spec);
            ++encoded;
            EXPECT_TRUE(is_classification_shaped(enc.task.input_statements(), enc.task.output_statements()));
            EXPECT_EQ(enc.task.inputs().size(), spec.examples.size());
            EXPECT_EQ(read_examples(enc).size(), spec.examples.size());
            const auto & vocab = enc.language->vocabulary();
            EXPECT_TRUE(oracle::is_task(to_oracle(enc.task.input_statements(), vocab),
                                        to_oracle(enc.task.output_statements(), vocab), oracle_language(vocab)));
        } catch (const EncodingError &) {
        } catch (const TaskValidationError &) {
        }
    }
    EXPECT_GT(encoded, 20);
}

TEST(Encoder, SampleFilesLoad)
{
    std::ifstream in(std::string(VTASK_SAMPLES_DIR) + "/colored_box.pvt");
    std::ostringstream ss;
    ss << in.rdbuf();
    const auto loaded = load_document(parse_task_file(ss.str()));
    ASSERT_TRUE(loaded.task);
    EXPECT_TRUE(verify_isomorphism(*loaded.task, paper::alpha_task()));
}
