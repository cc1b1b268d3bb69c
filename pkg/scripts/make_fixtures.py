#!/usr/bin/env python3
"""Generate the canned transport fixtures used by tests and offline demos.

Writes three fixture roots under tests/fixtures/:

* transport/        32-entry ArXiv feed + full texts (the e2e corpus)
* transport_mini/   8-entry feed with 2 duplicate/missing records
* transport_adapters/  tiny PubMed XML, ArXiv Atom, scholar JSON samples

Everything is seeded; rerunning the script reproduces identical bytes. The
script ends by running the real pipeline against the generated corpus and
asserting the properties the test suite depends on (retention count,
distinct scores, chunk count, template binding counts).
"""

from __future__ import annotations

import json
import random
import sys
from pathlib import Path
from xml.sax.saxutils import escape

ROOT = Path(__file__).resolve().parent.parent
FIXTURES = ROOT / "tests" / "fixtures"

QUERY = (
    '("Multimodal Large Language Model" OR MLLM OR "Information Fusion" OR '
    '"Multimodal Learning") AND (Healthcare OR Medicine OR Health)'
)

# Query-bearing vocabulary; how often these appear drives the CS score.
TOPIC = ["multimodal", "fusion", "healthcare", "medicine", "health", "language", "model"]

# Neutral scientific filler. Deliberately avoids the router's metadata cue
# words (author, year, published, keyword, database, cited, related, ...).
FILLER = """
signal encoder latent representation cohort training validation inference
pipeline benchmark segmentation classifier attention transformer embedding
calibration robustness generalization ablation baseline metric accuracy
recall precision gradient optimizer batch epoch regularization dropout
feature modality sensor waveform radiology pathology oncology triage
diagnosis prognosis screening monitoring wearable biomarker genomic
protein molecule compound dosage therapy intervention outcome mortality
morbidity readmission sepsis pneumonia fracture lesion tumor nodule
resolution augmentation sampling stratification imputation missingness
artifact denoising fourier wavelet spectrogram token context window
decoder projection alignment contrastive distillation pruning quantization
latency throughput deployment federated privacy consent governance audit
""".split()

AUTHORS = [
    "Lena Ortiz", "Marcus Webb", "Priya Nair", "Tomas Eriksen", "Aiko Tanaka",
    "Samuel Osei", "Ingrid Bauer", "Rafael Costa", "Mei Chen", "Omar Haddad",
]

SECTION_HEADS = [
    "Overview", "Methods", "Data Preparation", "Experiments", "Findings",
    "Limitations", "Outlook",
]


def sentence(rng: random.Random, topic_boost: int) -> str:
    n = rng.randint(8, 14)
    words = []
    for _ in range(n):
        pool = TOPIC if rng.random() < topic_boost / 20.0 else FILLER
        words.append(rng.choice(pool))
    words[0] = words[0].capitalize()
    return " ".join(words) + "."


def make_record(i: int, rng: random.Random) -> dict:
    # Records 0..7 are strongly on-topic so the quartile keeps them.
    level = 12 if i < 8 else max(0, 6 - i // 4)
    topic_a, topic_b = TOPIC[i % len(TOPIC)], TOPIC[(i * 3 + 1) % len(TOPIC)]
    title = (
        f"{topic_a.capitalize()} {topic_b.capitalize()} Study {i:02d}: "
        f"{rng.choice(FILLER).capitalize()} {rng.choice(FILLER).capitalize()}"
    )
    abstract_parts = [sentence(rng, level) for _ in range(5)]
    if level >= 12:
        # Repeat the query phrase so these records' top-5 TF-IDF keywords
        # overlap the query keywords; the repeat count varies per record to
        # keep CS scores distinct.
        reps = 3 + (i % 4)
        phrase = "fusion multimodal healthcare medicine health"
        extra = " ".join([phrase] * reps) + " " + TOPIC[i % len(TOPIC)]
        abstract_parts.insert(1, extra.capitalize() + ".")
    abstract = " ".join(abstract_parts)
    n_authors = 2 + (i % 2)
    authors = [AUTHORS[(i + k * 3) % len(AUTHORS)] for k in range(n_authors)]
    return {
        "doi": f"10.7777/fx{i:03d}",
        "title": title,
        "abstract": abstract,
        "year": 2023 + (i % 3),
        "authors": authors,
        "pdf_url": f"https://fixture.local/ft/fx{i:03d}.txt",
        "arxiv_id": f"2405.{10000 + i}",
    }


def make_fulltext(rec: dict, all_dois: list[str], rng: random.Random) -> str:
    parts = [rec["title"], "", rec["abstract"], ""]
    for head in SECTION_HEADS:
        parts.append(head)
        block = " ".join(sentence(rng, 8) for _ in range(rng.randint(10, 16)))
        parts.append(block)
        parts.append("")
    refs = ["References"]
    cited = rng.sample([d for d in all_dois if d != rec["doi"]], rng.randint(2, 4))
    cited.append(f"10.5555/ext{rng.randint(0, 30):02d}")
    for j, doi in enumerate(cited, start=1):
        refs.append(f"[{j}] Study of record series. doi:{doi}")
    parts.extend(refs)
    return "\n".join(parts)


def atom_feed(records: list[dict]) -> str:
    entries = []
    for rec in records:
        authors = "".join(
            f"<author><name>{escape(a)}</name></author>" for a in rec["authors"]
        )
        entries.append(
            f"""  <entry>
    <id>http://arxiv.org/abs/{rec["arxiv_id"]}</id>
    <title>{escape(rec["title"])}</title>
    <summary>{escape(rec["abstract"])}</summary>
    <published>{rec["year"]}-03-15T00:00:00Z</published>
    {authors}
    <arxiv:doi>{rec["doi"]}</arxiv:doi>
    <link title="pdf" type="application/pdf" href="{rec["pdf_url"]}"/>
  </entry>"""
        )
    body = "\n".join(entries)
    return (
        '<?xml version="1.0" encoding="UTF-8"?>\n'
        '<feed xmlns="http://www.w3.org/2005/Atom" '
        'xmlns:arxiv="http://arxiv.org/schemas/atom">\n'
        f"{body}\n</feed>\n"
    )


def write_main_fixture() -> None:
    rng = random.Random(20240515)
    out = FIXTURES / "transport"
    (out / "ft").mkdir(parents=True, exist_ok=True)
    records = [make_record(i, rng) for i in range(32)]
    all_dois = [r["doi"] for r in records]
    routes = [{"match": {"url_contains": "arxiv"}, "file": "arxiv.xml"}]
    (out / "arxiv.xml").write_text(atom_feed(records), encoding="utf-8")
    for rec in records:
        name = rec["pdf_url"].rsplit("/", 1)[-1]
        (out / "ft" / name).write_text(
            make_fulltext(rec, all_dois, rng), encoding="utf-8"
        )
        routes.append({"match": {"url_contains": f"ft/{name}"}, "file": f"ft/{name}"})
    (out / "manifest.json").write_text(
        json.dumps(routes, indent=2) + "\n", encoding="utf-8"
    )


def write_mini_fixture() -> None:
    rng = random.Random(777)
    out = FIXTURES / "transport_mini"
    (out / "ft").mkdir(parents=True, exist_ok=True)
    records = [make_record(i, rng) for i in range(6)]
    # Two extra entries: duplicates of the first two (same doi+title) that
    # also carry empty abstracts, so either rule discards them.
    for src in records[:2]:
        dup = dict(src)
        dup["abstract"] = ""
        records.append(dup)
    all_dois = [r["doi"] for r in records[:6]]
    routes = [{"match": {"url_contains": "arxiv"}, "file": "arxiv.xml"}]
    (out / "arxiv.xml").write_text(atom_feed(records), encoding="utf-8")
    for rec in records[:6]:
        name = rec["pdf_url"].rsplit("/", 1)[-1]
        (out / "ft" / name).write_text(
            make_fulltext(rec, all_dois, rng), encoding="utf-8"
        )
        routes.append({"match": {"url_contains": f"ft/{name}"}, "file": f"ft/{name}"})
    (out / "manifest.json").write_text(
        json.dumps(routes, indent=2) + "\n", encoding="utf-8"
    )


PUBMED_XML = """<?xml version="1.0" encoding="UTF-8"?>
<PubmedArticleSet>
  <PubmedArticle>
    <MedlineCitation>
      <Article>
        <Journal><JournalIssue><PubDate><Year>2024</Year></PubDate></JournalIssue></Journal>
        <ArticleTitle>Fusion Screening for Sepsis Cohorts</ArticleTitle>
        <Abstract><AbstractText>Multimodal fusion improves sepsis screening.</AbstractText></Abstract>
        <AuthorList>
          <Author><LastName>Nair</LastName><ForeName>Priya</ForeName></Author>
          <Author><LastName>Webb</LastName><ForeName>Marcus</ForeName></Author>
        </AuthorList>
      </Article>
    </MedlineCitation>
    <PubmedData>
      <ArticleIdList>
        <ArticleId IdType="doi">10.8888/pm001</ArticleId>
        <ArticleId IdType="pmc">PMC9000001</ArticleId>
      </ArticleIdList>
    </PubmedData>
  </PubmedArticle>
  <PubmedArticle>
    <MedlineCitation>
      <Article>
        <Journal><JournalIssue><PubDate><MedlineDate>2023 Jan-Feb</MedlineDate></PubDate></JournalIssue></Journal>
        <ArticleTitle>Wearable Monitoring in Oncology</ArticleTitle>
        <Abstract><AbstractText>Wearable sensors support oncology monitoring.</AbstractText></Abstract>
        <AuthorList>
          <Author><LastName>Tanaka</LastName><ForeName>Aiko</ForeName></Author>
        </AuthorList>
      </Article>
    </MedlineCitation>
    <PubmedData>
      <ArticleIdList>
        <ArticleId IdType="doi">10.8888/pm002</ArticleId>
      </ArticleIdList>
    </PubmedData>
  </PubmedArticle>
</PubmedArticleSet>
"""

PUBMED_ESEARCH = """<?xml version="1.0" encoding="UTF-8"?>
<eSearchResult><Count>2</Count><IdList><Id>9000001</Id><Id>9000002</Id></IdList></eSearchResult>
"""

SCHOLAR_JSON = {
    "results": [
        {
            "doi": "10.9999/sc001",
            "title": "Contrastive Alignment for Clinical Text",
            "abstract": "Contrastive alignment improves clinical text retrieval.",
            "year": 2025,
            "authors": ["Ingrid Bauer", "Omar Haddad"],
            "pdf_url": "https://fixture.local/ft/sc001.txt",
        },
        {
            "doi": "10.9999/sc002",
            "title": "Benchmarking Triage Classifiers",
            "abstract": "A benchmark for triage classifiers across sites.",
            "year": 2024,
            "authors": ["Samuel Osei"],
            "pdf_url": "",
        },
    ]
}


def write_adapter_fixture() -> None:
    rng = random.Random(11)
    out = FIXTURES / "transport_adapters"
    out.mkdir(parents=True, exist_ok=True)
    two = [make_record(i, rng) for i in range(2)]
    (out / "arxiv_two.xml").write_text(atom_feed(two), encoding="utf-8")
    (out / "pubmed_esearch.xml").write_text(PUBMED_ESEARCH, encoding="utf-8")
    (out / "pubmed_efetch.xml").write_text(PUBMED_XML, encoding="utf-8")
    (out / "scholar.json").write_text(
        json.dumps(SCHOLAR_JSON, indent=2) + "\n", encoding="utf-8"
    )
    routes = [
        {"match": {"url_contains": "esearch.fcgi"}, "file": "pubmed_esearch.xml"},
        {"match": {"url_contains": "efetch.fcgi"}, "file": "pubmed_efetch.xml"},
        {"match": {"url_contains": "arxiv"}, "file": "arxiv_two.xml"},
        {"match": {"url_contains": "scholar"}, "file": "scholar.json"},
    ]
    (out / "manifest.json").write_text(
        json.dumps(routes, indent=2) + "\n", encoding="utf-8"
    )


def validate() -> None:
    sys.path.insert(0, str(ROOT / "src"))
    from litrev.evalbench.benchmark import gen_kg_questions, gen_vs_questions
    from litrev.ingest.records import SearchRequest
    from litrev.service.config import PipelineConfig
    from litrev.service.engine import OfflineQuestionLlm
    from litrev.service.pipeline import run_pipeline

    config = PipelineConfig(
        sources=["arxiv"], transport="fixture",
        fixture_root=str(FIXTURES / "transport"),
    )
    req = SearchRequest(query=QUERY, sources=["arxiv"], date_from=2023, date_to=2025)
    snapshot, report = run_pipeline(req, config)
    assert report.fetched == 32, report.fetched
    assert report.after_normalize == 32, report.after_normalize
    assert report.after_filter == 8, report.after_filter
    assert report.fulltext_ok == 8, report.to_dict()
    assert report.chunks >= 20, report.chunks
    kg = gen_kg_questions(snapshot.graph, per_type=4, rng_seed=42)
    assert len(kg) == 20
    vs = gen_vs_questions(snapshot.chunks, OfflineQuestionLlm(), n=20, rng_seed=42)
    assert len(vs) == 20
    print(
        f"validated: chunks={report.chunks} nodes={report.graph_nodes} "
        f"edges={report.graph_edges}"
    )

    mini_config = PipelineConfig(
        sources=["arxiv"], transport="fixture",
        fixture_root=str(FIXTURES / "transport_mini"),
    )
    mini_snapshot, mini_report = run_pipeline(req, mini_config)
    assert mini_report.fetched == 8, mini_report.fetched
    assert mini_report.after_normalize == 6, mini_report.after_normalize
    print(f"mini validated: filter retained {mini_report.after_filter}")


def main() -> None:
    write_main_fixture()
    write_mini_fixture()
    write_adapter_fixture()
    validate()


if __name__ == "__main__":
    main()
