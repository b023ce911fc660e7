#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <fstream>
#include <optional>

#include "discodep/corpus.hpp"
#include "discodep/decoders.hpp"
#include "discodep/errors.hpp"
#include "discodep/evaluation.hpp"
#include "discodep/score_exchange.hpp"
#include "discodep/structure.hpp"
#include "discodep/tokenizer.hpp"
#include "discodep/vocab.hpp"

namespace py = pybind11;
using namespace discodep;

namespace {

using Array = py::array_t<double, py::array::c_style | py::array::forcecast>;

ScoreSet score_set_from(const Array& arcs, const std::optional<Array>& labels,
                        const std::vector<std::string>& inventory) {
  if (arcs.ndim() != 2 || arcs.shape(0) != arcs.shape(1) || arcs.shape(0) < 2) {
    throw ValidationError("arc_scores must be a square (n+1) x (n+1) matrix with n >= 1");
  }
  const int width = static_cast<int>(arcs.shape(0));
  ScoreSet s(width - 1);
  std::copy(arcs.data(), arcs.data() + arcs.size(), s.arc_data().begin());
  // illegal cells are -inf regardless of the input
  for (int h = 0; h < width; ++h) {
    s.arc(h, 0) = kNegInf;
    s.arc(h, h) = kNegInf;
  }
  if (labels) {
    if (labels->ndim() != 3 || labels->shape(0) != width || labels->shape(1) != width ||
        labels->shape(2) != static_cast<py::ssize_t>(inventory.size())) {
      throw ValidationError("label_scores must have shape (n+1, n+1, len(label_inventory))");
    }
    s.set_label_inventory(inventory);
    std::copy(labels->data(), labels->data() + labels->size(), s.label_data().begin());
  } else if (!inventory.empty()) {
    s.set_inventory_only(inventory);
  }
  s.validate();
  return s;
}

Array arc_array(const ScoreSet& s) {
  Array out({s.width(), s.width()});
  std::copy(s.arc_data().begin(), s.arc_data().end(), out.mutable_data());
  return out;
}

py::object label_array(const ScoreSet& s) {
  if (!s.has_labels()) return py::none();
  Array out({s.width(), s.width(), s.num_labels()});
  std::copy(s.label_data().begin(), s.label_data().end(), out.mutable_data());
  return std::move(out);
}

NodeCount node_count(bool with_root) {
  return with_root ? NodeCount::kWithRoot : NodeCount::kWithoutRoot;
}

py::dict census_dict(const ComplexityReport& r) {
  py::dict d;
  d["documents"] = r.documents();
  d["gap_degree"] = r.gap_degree_counts;
  d["edge_degree"] = r.edge_degree_counts;
  d["projective"] = r.projective;
  d["non_projective"] = r.nonprojective;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Discourse dependency parsing core";

  auto base = py::register_exception<Error>(m, "DiscodepError", PyExc_RuntimeError);
  py::register_exception<ParseError>(m, "ParseError", base.ptr());
  py::register_exception<ValidationError>(m, "ValidationError", base.ptr());
  py::register_exception<IoError>(m, "IoError", base.ptr());
  py::register_exception<UsageError>(m, "UsageError", base.ptr());

  m.attr("ROOT_SYMBOL") = std::string(kRootSymbol);
  m.attr("SCORE_FORMAT_VERSION") = std::string(kScoreFormatVersion);

  py::class_<DepTree>(m, "DepTree")
      .def(py::init<std::vector<int>, std::vector<std::string>>(), py::arg("heads"),
           py::arg("labels") = std::vector<std::string>{})
      .def_readwrite("heads", &DepTree::heads)
      .def_readwrite("labels", &DepTree::labels)
      .def("__len__", &DepTree::size)
      .def("__eq__", [](const DepTree& a, const DepTree& b) { return a == b; })
      .def("__repr__", [](const DepTree& t) {
        return "DepTree(heads=" + py::repr(py::cast(t.heads)).cast<std::string>() + ")";
      });
  py::implicitly_convertible<py::list, DepTree>();

  py::class_<Edu>(m, "Edu")
      .def_readonly("index", &Edu::index)
      .def_readonly("text", &Edu::text)
      .def_readonly("gold_head", &Edu::gold_head)
      .def_readonly("gold_relation", &Edu::gold_relation)
      .def("__repr__", [](const Edu& e) {
        return "Edu(" + std::to_string(e.index) + ", head=" + std::to_string(e.gold_head) + ")";
      });

  py::class_<Document>(m, "Document")
      .def_readonly("doc_id", &Document::doc_id)
      .def_readonly("edus", &Document::edus)
      .def("__len__", &Document::size)
      .def("gold_tree", &Document::gold_tree)
      .def("__eq__", [](const Document& a, const Document& b) { return a == b; });

  m.def(
      "load_document",
      [](const std::string& text, const std::string& doc_id, const std::string& key) {
        return load_document(text, doc_id, LoadOptions{key});
      },
      py::arg("text"), py::arg("doc_id") = "", py::arg("wrapper_key") = "root");
  m.def(
      "load_document_file",
      [](const std::filesystem::path& p, const std::string& key) {
        return load_document_file(p, LoadOptions{key});
      },
      py::arg("path"), py::arg("wrapper_key") = "root");
  m.def(
      "load_split",
      [](const std::filesystem::path& root, const std::string& split, const std::string& key) {
        return load_split(root, parse_split(split), LoadOptions{key}).documents;
      },
      py::arg("root"), py::arg("split"), py::arg("wrapper_key") = "root",
      "Documents of train, dev or test in filename order.");
  m.def(
      "serialize_document",
      [](const Document& d, const std::string& key) { return serialize_document(d, LoadOptions{key}); },
      py::arg("document"), py::arg("wrapper_key") = "root");

  py::class_<ScoreSet>(m, "ScoreSet")
      .def(py::init(&score_set_from), py::arg("arc_scores"), py::arg("label_scores") = py::none(),
           py::arg("label_inventory") = std::vector<std::string>{})
      .def_property_readonly("n", &ScoreSet::n)
      .def_property_readonly("arc_scores", &arc_array)
      .def_property_readonly("label_scores", &label_array)
      .def_property_readonly("label_inventory", &ScoreSet::label_inventory)
      .def("__eq__", [](const ScoreSet& a, const ScoreSet& b) { return a == b; });
  py::implicitly_convertible<py::array, ScoreSet>();

  m.def("eisner_decode",
        [](const ScoreSet& s, bool single_root) { return eisner_decode(s, {single_root}); },
        py::arg("scores"), py::arg("single_root") = false,
        "Best projective tree; ties go to the leftmost split point.");
  m.def("cle_decode",
        [](const ScoreSet& s, bool single_root) { return cle_decode(s, {single_root}); },
        py::arg("scores"), py::arg("single_root") = false,
        "Best spanning arborescence rooted at 0.");
  m.def(
      "decode",
      [](const ScoreSet& s, const std::string& algo, bool single_root) {
        return decode(s, parse_algorithm(algo), {single_root});
      },
      py::arg("scores"), py::arg("algo") = "cle", py::arg("single_root") = false);
  m.def("assign_labels", &assign_labels, py::arg("tree"), py::arg("scores"));
  m.def("tree_score", &tree_score, py::arg("tree"), py::arg("scores"));

  m.def(
      "read_scores",
      [](const std::filesystem::path& p) {
        std::vector<std::pair<std::string, ScoreSet>> out;
        for (auto& d : read_scores(p)) out.emplace_back(std::move(d.doc_id), std::move(d.scores));
        return out;
      },
      py::arg("path"), "List of (doc_id, ScoreSet) in file order.");
  m.def(
      "write_scores",
      [](const std::filesystem::path& p, const std::vector<std::pair<std::string, ScoreSet>>& docs) {
        std::vector<ScoredDocument> v;
        for (const auto& [id, s] : docs) v.push_back({id, s});
        write_scores(v, p);
      },
      py::arg("path"), py::arg("documents"));

  m.def("is_projective", &is_projective, py::arg("tree"));
  m.def("gap_degree", &gap_degree, py::arg("tree"));
  m.def("edge_degree", &edge_degree, py::arg("tree"));
  m.def("max_path_length", &max_path_length, py::arg("tree"));
  m.def(
      "leaf_proportion",
      [](const DepTree& t, bool with_root) { return leaf_proportion(t, node_count(with_root)); },
      py::arg("tree"), py::arg("with_root") = true);
  m.def(
      "complexity_census",
      [](const std::vector<Document>& docs) {
        Corpus c;
        c.documents = docs;
        return census_dict(complexity_census(std::span<const Corpus>(&c, 1)));
      },
      py::arg("documents"));

  m.def(
      "attachment_scores",
      [](const std::vector<DepTree>& pred, const std::vector<DepTree>& gold, bool with_root) {
        const EvalReport r = attachment_scores(pred, gold, {}, node_count(with_root));
        py::dict d;
        d["uas"] = r.uas;
        d["las"] = r.las;
        d["conditional_label_accuracy"] = r.conditional_label_accuracy;
        d["total"] = r.counts.total;
        d["correct_heads"] = r.counts.correct_heads;
        d["correct_both"] = r.counts.correct_both;
        d["avg_max_path_len"] = r.structure.avg_max_path_len;
        d["avg_leaf_proportion"] = r.structure.avg_leaf_proportion;
        d["documents"] = r.documents;
        return d;
      },
      py::arg("pred"), py::arg("gold"), py::arg("with_root") = true);

  m.def("tokenize_words", &tokenize_words, py::arg("text"));
  m.def("split_characters", &split_characters, py::arg("word"));

  py::class_<Vocab>(m, "Vocab")
      .def_property_readonly("words", [](const Vocab& v) { return v.words.symbols(); })
      .def_property_readonly("chars", [](const Vocab& v) { return v.chars.symbols(); })
      .def_property_readonly("relations", [](const Vocab& v) { return v.relations.symbols(); })
      .def("word_id", &Vocab::word_id)
      .def("char_id", &Vocab::char_id)
      .def("relation_id", &Vocab::relation_id)
      .def("encode_edu", &Vocab::encode_edu)
      .def("save", [](const Vocab& v, const std::filesystem::path& p) {
        std::ofstream out(p, std::ios::binary);
        if (!out) throw IoError("cannot open " + p.string() + " for writing");
        write_vocab(v, out);
      });
  m.attr("PAD_ID") = Vocab::kPad;
  m.attr("UNK_ID") = Vocab::kUnk;
  m.attr("ROOT_ID") = Vocab::kRoot;
  m.def(
      "build_vocab",
      [](const std::vector<Document>& docs) {
        Corpus c;
        c.documents = docs;
        return build_vocab(c);
      },
      py::arg("documents"));
  m.def(
      "read_vocab",
      [](const std::filesystem::path& p) {
        std::ifstream in(p, std::ios::binary);
        if (!in) throw IoError("cannot open " + p.string());
        return read_vocab(in);
      },
      py::arg("path"));
}
