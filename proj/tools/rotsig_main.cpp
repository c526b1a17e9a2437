// rotsig -- rotation-invariant signature features of 2D stroke trajectories.
//
// Subcommands:
//   features      ingest strokes, emit invariant feature CSV (+ JSON sidecar)
//   derive-table  derive and write the invariant table
//   classify      k-NN over feature CSVs
//   selftest      run the built-in property suite
//   synth         generate the bundled synthetic benchmark
//
// Exit codes: 0 success, 1 usage error, 2 parse error, 3 internal invariant
// violation.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "rotsig/common.hpp"
#include "rotsig/features.hpp"
#include "rotsig/invariants.hpp"
#include "rotsig/knn.hpp"
#include "rotsig/selftest.hpp"
#include "rotsig/stroke_data.hpp"
#include "rotsig/synthetic.hpp"

namespace {

constexpr int kExitUsage = 1;
constexpr int kExitParse = 2;
constexpr int kExitInternal = 3;

struct FeaturesArgs {
    std::string input;
    std::string format = "stroke-json";
    int order = 6;
    std::string variant = "new";
    std::string normalize = "tv";
    std::optional<std::uint64_t> rotate_seed;
    std::string output;
};

int run_features(const FeaturesArgs& args) {
    const auto format = rotsig::stroke_format_from_name(args.format);
    if (!format) {
        std::cerr << "unknown format: " << args.format << "\n";
        return kExitUsage;
    }
    const auto mode = rotsig::normalize_mode_from_name(args.normalize);
    if (!mode) {
        std::cerr << "unknown normalization: " << args.normalize << "\n";
        return kExitUsage;
    }
    if (args.order < 2 || args.order % 2 != 0 || args.order > rotsig::kMaxOrder) {
        std::cerr << "order must be even and in [2, " << rotsig::kMaxOrder << "]\n";
        return kExitUsage;
    }

    std::ifstream in(args.input);
    if (!in) {
        std::cerr << "cannot open input: " << args.input << "\n";
        return kExitUsage;
    }
    std::vector<std::string> warnings;
    rotsig::Dataset dataset = rotsig::parse_strokes(in, *format, &warnings);
    for (const auto& w : warnings) std::cerr << "warning: " << w << "\n";

    rotsig::FeatureOptions opts;
    opts.order = args.order;
    opts.variant = args.variant == "full" ? rotsig::FeatureVariant::kFull
                                          : rotsig::FeatureVariant::kNewOnly;
    opts.normalization = *mode;
    opts.rotate_seed = args.rotate_seed;

    const rotsig::InvariantTable table = rotsig::derive_basis(args.order);
    const auto extraction = rotsig::extract_features(dataset, table, opts);
    for (const auto& err : extraction.errors)
        std::cerr << "warning: sample '" << err.sample_id << "' skipped: " << err.message
                  << "\n";

    const auto labels = rotsig::feature_labels(table, opts.variant);
    if (args.output.empty()) {
        rotsig::write_feature_csv(std::cout, extraction.features, labels);
    } else {
        std::ofstream out(args.output);
        if (!out) {
            std::cerr << "cannot open output: " << args.output << "\n";
            return kExitUsage;
        }
        rotsig::write_feature_csv(out, extraction.features, labels);
        std::ofstream meta(args.output + ".meta.json");
        rotsig::write_feature_metadata(meta, table, opts, extraction.features.size(),
                                       extraction.errors.size());
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"rotation-invariant signature features of 2D stroke trajectories"};
    app.require_subcommand(1);

    FeaturesArgs fargs;
    auto* features = app.add_subcommand("features", "extract invariant features");
    features->add_option("--input", fargs.input, "input trajectory file")->required();
    features->add_option("--format", fargs.format,
                         "stroke-json | stroke-csv | unipen-like");
    features->add_option("--order", fargs.order, "truncation order (even)");
    features->add_option("--variant", fargs.variant, "new | full")
        ->check(CLI::IsMember({"new", "full"}));
    features->add_option("--normalize", fargs.normalize, "none | tv | bbox");
    features->add_option("--rotate-seed", fargs.rotate_seed,
                         "rotate each sample by a seeded random angle");
    features->add_option("--output", fargs.output, "output CSV (stdout when omitted)");

    int max_order = 6;
    std::string table_out;
    auto* derive = app.add_subcommand("derive-table", "derive the invariant table");
    derive->add_option("--max-order", max_order, "highest (even) level");
    derive->add_option("--output", table_out, "output file (stdout when omitted)");

    std::string train_path, test_path, predictions_out;
    int k = 1;
    bool standardize = false;
    auto* classify = app.add_subcommand("classify", "k-NN over feature CSVs");
    classify->add_option("--train", train_path, "training feature CSV")->required();
    classify->add_option("--test", test_path, "test feature CSV")->required();
    classify->add_option("--k", k, "neighbor count");
    classify->add_flag("--standardize", standardize, "standardize features on train stats");
    classify->add_option("--predictions", predictions_out, "write per-sample predictions CSV");

    auto* selftest = app.add_subcommand("selftest", "run the built-in property suite");

    rotsig::SyntheticOptions sargs;
    std::string synth_out, synth_split = "train";
    auto* synth = app.add_subcommand("synth", "generate the synthetic benchmark");
    synth->add_option("--per-class", sargs.per_class, "samples per class");
    synth->add_option("--seed", sargs.seed, "generator seed");
    synth->add_option("--split", synth_split, "train | test")
        ->check(CLI::IsMember({"train", "test"}));
    synth->add_option("--output", synth_out, "output stroke-json (stdout when omitted)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitUsage;
    }

    try {
        if (features->parsed()) return run_features(fargs);

        if (derive->parsed()) {
            const rotsig::InvariantTable table = rotsig::derive_basis(max_order);
            if (table_out.empty()) {
                rotsig::write_invariant_table(std::cout, table);
            } else {
                std::ofstream out(table_out);
                if (!out) {
                    std::cerr << "cannot open output: " << table_out << "\n";
                    return kExitUsage;
                }
                rotsig::write_invariant_table(out, table);
            }
            return 0;
        }

        if (classify->parsed()) {
            std::ifstream train_in(train_path), test_in(test_path);
            if (!train_in || !test_in) {
                std::cerr << "cannot open feature CSVs\n";
                return kExitUsage;
            }
            const auto train = rotsig::read_feature_csv(train_in);
            const auto test = rotsig::read_feature_csv(test_in);
            std::vector<std::string> train_labels;
            for (const auto& l : train.labels) {
                if (!l) {
                    std::cerr << "training rows must be labeled\n";
                    return kExitParse;
                }
                train_labels.push_back(*l);
            }
            const auto result = rotsig::knn_classify(train.values, train_labels, test.values,
                                                     test.labels, k, standardize);
            for (const auto& w : result.warnings) std::cerr << "warning: " << w << "\n";
            if (!predictions_out.empty()) {
                std::ofstream out(predictions_out);
                out << "id,predicted\n";
                for (std::size_t i = 0; i < result.predicted.size(); ++i)
                    out << test.ids[i] << ',' << result.predicted[i] << '\n';
            }
            std::cout << "k=" << result.k_used << " test=" << test.values.size()
                      << " labeled=" << result.labeled << " error_rate=" << result.error_rate
                      << "\n";
            return 0;
        }

        if (selftest->parsed()) return rotsig::run_selftest(std::cout) ? 0 : kExitInternal;

        if (synth->parsed()) {
            sargs.split = synth_split == "test" ? rotsig::Split::kTest : rotsig::Split::kTrain;
            const rotsig::Dataset ds = rotsig::make_synthetic_dataset(sargs);
            std::ostream* os = &std::cout;
            std::ofstream file;
            if (!synth_out.empty()) {
                file.open(synth_out);
                if (!file) {
                    std::cerr << "cannot open output: " << synth_out << "\n";
                    return kExitUsage;
                }
                os = &file;
            }
            for (const auto& sample : ds.samples) {
                nlohmann::json j;
                j["id"] = sample.id;
                if (sample.label)
                    j["label"] = *sample.label;
                else
                    j["label"] = nullptr;
                auto& strokes = j["strokes"] = nlohmann::json::array();
                for (const auto& stroke : sample.strokes) {
                    nlohmann::json js = nlohmann::json::array();
                    for (const auto& p : stroke) js.push_back({p.x, p.y});
                    strokes.push_back(std::move(js));
                }
                *os << j.dump() << '\n';
            }
            return 0;
        }
    } catch (const rotsig::ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kExitParse;
    } catch (const rotsig::ContractViolation& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kExitInternal;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInternal;
    }
    return 0;
}
