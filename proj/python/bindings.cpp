#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "rrvqa/csv.hpp"
#include "rrvqa/dct.hpp"
#include "rrvqa/metrics.hpp"
#include "rrvqa/pipeline.hpp"
#include "rrvqa/synth.hpp"
#include "rrvqa/tuning.hpp"

namespace py = pybind11;
using namespace rrvqa;

namespace {

Plane plane_from_array(const py::array_t<double, py::array::c_style | py::array::forcecast>& a) {
    if (a.ndim() != 2) throw DataError("expected a 2-D array");
    Plane p(static_cast<int>(a.shape(1)), static_cast<int>(a.shape(0)));
    const auto view = a.unchecked<2>();
    for (py::ssize_t y = 0; y < a.shape(0); ++y)
        for (py::ssize_t x = 0; x < a.shape(1); ++x)
            p.at(static_cast<int>(x), static_cast<int>(y)) = static_cast<float>(view(y, x));
    return p;
}

std::vector<FeatureRow> rows_from_array(
    const py::array_t<double, py::array::c_style | py::array::forcecast>& x) {
    if (x.ndim() != 2 || x.shape(1) != kNumFeatures)
        throw DataError("expected an (n, 8) feature array");
    const auto view = x.unchecked<2>();
    std::vector<FeatureRow> rows(static_cast<size_t>(x.shape(0)));
    for (py::ssize_t i = 0; i < x.shape(0); ++i)
        for (int f = 0; f < kNumFeatures; ++f) rows[i][f] = view(i, f);
    return rows;
}

TrainingSet dataset_from_arrays(
    const py::array_t<double, py::array::c_style | py::array::forcecast>& x,
    const py::array_t<double, py::array::c_style | py::array::forcecast>& y) {
    TrainingSet data;
    data.features = rows_from_array(x);
    if (y.ndim() != 1 || y.shape(0) != x.shape(0))
        throw DataError("labels must be a 1-D array matching the feature rows");
    const auto view = y.unchecked<1>();
    data.labels.resize(static_cast<size_t>(y.shape(0)));
    for (py::ssize_t i = 0; i < y.shape(0); ++i) data.labels[i] = view(i);
    return data;
}

GbtParams params_from_kwargs(int n_estimators, int max_depth, double learning_rate,
                             double subsample, double colsample_bytree, double lambda_l2,
                             double gamma, double min_child_weight, uint64_t seed) {
    GbtParams p;
    p.n_estimators = n_estimators;
    p.max_depth = max_depth;
    p.learning_rate = learning_rate;
    p.subsample = subsample;
    p.colsample_bytree = colsample_bytree;
    p.lambda_l2 = lambda_l2;
    p.gamma = gamma;
    p.min_child_weight = min_child_weight;
    p.seed = seed;
    return p;
}

py::dict compare_result_to_dict(const CompareResult& r) {
    py::dict out;
    const auto z = r.fused.flatten();
    py::array_t<double> fused(kNumFeatures);
    std::copy(z.begin(), z.end(), fused.mutable_data());
    out["fused"] = fused;
    out["mu_ssim"] = r.fused.mu_ssim;
    out["kl_proxy"] = r.kl;
    out["frames_used"] = r.frames_used;
    out["truncated"] = r.truncated;
    out["ssim_per_frame"] = r.ssim.per_frame;
    py::dict pooled;
    pooled["ref"] = r.ref_pooled.mean;
    pooled["test"] = r.test_pooled.mean;
    out["pooled"] = pooled;
    return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Reduced-reference video quality toolkit (C++ core bindings)";

    py::register_exception<Error>(m, "RrvqaError", PyExc_RuntimeError);

    m.def(
        "compare",
        [](const std::string& ref, const std::string& test, const std::string& raw,
           int threads) {
            std::optional<RawParams> params;
            if (!raw.empty()) params = RawParams::parse(raw);
            return compare_result_to_dict(compare_files(ref, test, params, threads));
        },
        py::arg("ref"), py::arg("test"), py::arg("raw") = "", py::arg("threads") = 0,
        "Full pipeline on a reference/test file pair; returns the fused feature "
        "vector plus diagnostics.");

    m.def(
        "ssim",
        [](const py::array_t<double, py::array::c_style | py::array::forcecast>& ref,
           const py::array_t<double, py::array::c_style | py::array::forcecast>& test) {
            return ssim_frame(plane_from_array(ref), plane_from_array(test));
        },
        py::arg("ref"), py::arg("test"),
        "Single-scale SSIM between two 2-D luma arrays on the 0..255 scale.");

    m.def(
        "dct2d",
        [](const py::array_t<double, py::array::c_style | py::array::forcecast>& block) {
            if (block.ndim() != 2 || block.shape(0) != block.shape(1))
                throw DataError("expected a square 2-D array");
            const int w = static_cast<int>(block.shape(0));
            std::vector<double> data(block.data(), block.data() + w * w);
            const auto coeffs = dct2d(data, w);
            py::array_t<double> out({w, w});
            std::copy(coeffs.begin(), coeffs.end(), out.mutable_data());
            return out;
        },
        py::arg("block"), "Orthonormal 2-D DCT-II of a square block.");

    m.def(
        "block_texture_energy",
        [](const py::array_t<double, py::array::c_style | py::array::forcecast>& coeffs) {
            if (coeffs.ndim() != 2 || coeffs.shape(0) != coeffs.shape(1))
                throw DataError("expected a square 2-D array");
            const int w = static_cast<int>(coeffs.shape(0));
            std::vector<double> data(coeffs.data(), coeffs.data() + w * w);
            return block_texture_energy(data, w);
        },
        py::arg("coeffs"), "Weighted absolute-AC energy of a transformed block.");

    py::class_<GbtModel>(m, "Model")
        .def_property_readonly("base_score", [](const GbtModel& m_) { return m_.base_score; })
        .def_property_readonly("learning_rate",
                               [](const GbtModel& m_) { return m_.learning_rate; })
        .def_property_readonly("n_trees", [](const GbtModel& m_) { return m_.trees.size(); })
        .def_property_readonly("feature_names",
                               [](const GbtModel& m_) { return m_.feature_names; })
        .def(
            "predict",
            [](const GbtModel& model,
               const py::array_t<double, py::array::c_style | py::array::forcecast>& x) {
                const auto preds = model.predict(rows_from_array(x));
                py::array_t<double> out(static_cast<py::ssize_t>(preds.size()));
                std::copy(preds.begin(), preds.end(), out.mutable_data());
                return out;
            },
            py::arg("x"), "Predict quality for (n, 8) fused feature rows.")
        .def("gain_importance",
             [](const GbtModel& model) {
                 const auto share = gain_importance(model);
                 return std::vector<double>(share.begin(), share.end());
             })
        .def("save", [](const GbtModel& model, const std::string& path) {
            save_model(model, path);
        });

    m.def(
        "train",
        [](const py::array_t<double, py::array::c_style | py::array::forcecast>& x,
           const py::array_t<double, py::array::c_style | py::array::forcecast>& y,
           int n_estimators, int max_depth, double learning_rate, double subsample,
           double colsample_bytree, double lambda_l2, double gamma, double min_child_weight,
           uint64_t seed) {
            const TrainResult result =
                train(dataset_from_arrays(x, y),
                      params_from_kwargs(n_estimators, max_depth, learning_rate, subsample,
                                         colsample_bytree, lambda_l2, gamma, min_child_weight,
                                         seed));
            return py::make_tuple(result.model, result.round_rmse);
        },
        py::arg("x"), py::arg("y"), py::arg("n_estimators") = 95, py::arg("max_depth") = 8,
        py::arg("learning_rate") = 0.072, py::arg("subsample") = 0.999,
        py::arg("colsample_bytree") = 0.852, py::arg("lambda_l2") = 1.0, py::arg("gamma") = 0.0,
        py::arg("min_child_weight") = 1.0, py::arg("seed") = 0,
        "Train the boosted-tree regressor; returns (model, per-round training RMSE).");

    m.def("load_model", &load_model, py::arg("path"));

    m.def("plcc", &plcc, py::arg("pred"), py::arg("truth"));
    m.def("srocc", &srocc, py::arg("pred"), py::arg("truth"));
    m.def("krocc", &krocc, py::arg("pred"), py::arg("truth"));
    m.def("rmse", &rmse, py::arg("pred"), py::arg("truth"));

    m.def(
        "generate_corpus",
        [](const std::string& out_dir, int contents, int levels, int width, int height,
           int frames, uint64_t seed) {
            SynthConfig cfg;
            cfg.contents = contents;
            cfg.levels = levels;
            cfg.width = width;
            cfg.height = height;
            cfg.frames = frames;
            cfg.seed = seed;
            py::list out;
            for (const SynthEntry& e : generate_corpus(out_dir, cfg)) {
                py::dict d;
                d["ref"] = e.ref;
                d["test"] = e.test;
                d["content"] = e.content;
                d["level"] = e.level;
                d["mos"] = e.mos;
                out.append(d);
            }
            return out;
        },
        py::arg("out_dir"), py::arg("contents") = 12, py::arg("levels") = 5,
        py::arg("width") = 64, py::arg("height") = 64, py::arg("frames") = 30,
        py::arg("seed") = 0,
        "Write a seeded synthetic corpus (Y4M clips + manifest.csv) and return its entries.");
}
