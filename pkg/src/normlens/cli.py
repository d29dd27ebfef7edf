"""Command-line surface: ingest -> metrics -> compare -> sample -> adapt -> eval -> report.

Every output file embeds the suite version and a config hash. With stub ports
and fixed seeds the whole pipeline is deterministic, so artifacts are
byte-identical across runs.
"""

from __future__ import annotations

import csv
import hashlib
import io
import json
import os
import sys
from pathlib import Path

import click

from . import __version__
from .adapt import (
    AdaptationResult,
    GenerationSpec,
    SamplingSpec,
    adapt_text,
    evaluate_adaptations,
    sample_sources,
)
from .corpus import Corpus, Document, VenueMap, corpus_stats, load_corpus
from .errors import NormlensError
from .metrics.framing import framing_similarity, mean_vector
from .metrics.rhetoric import classify_narrative, narrative_positions, positional_density
from .metrics.specificity import NpmiTable, build_npmi_table
from .pipeline import MetricConfig, compute_record
from .ports import (
    ChatCompletionGenerator,
    ChatCompletionJudge,
    EchoGenerator,
    HashFormalityStub,
    PositionalNarrativeStub,
    RuleBasedJudgeStub,
    SidecarClient,
    SidecarFormalityScorer,
    SidecarNarrativeClassifier,
)
from .stats import SCALAR_METRICS, BaselinePair, MetricRecord, baseline_pair, norm_strength, summarize
from .textprep import prepare

# display scaling, applied only at the report layer
_REPORT_SCALE = {"specificity": 100.0, "formality": 100.0}
_ARROW = {"up": "^", "down": "v", None: "="}


def _hash_params(params: dict) -> str:
    return hashlib.sha256(json.dumps(params, sort_keys=True, default=str).encode()).hexdigest()[:16]


def _meta(config_hash: str) -> dict:
    return {"suite": "normlens", "version": __version__, "config_hash": config_hash}


def _write_jsonl(path: Path, meta: dict, rows: list[dict]) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(json.dumps({"_meta": meta}, sort_keys=True) + "\n")
        for row in rows:
            fh.write(json.dumps(row, sort_keys=True) + "\n")


def _read_jsonl(path: Path) -> tuple[dict, list[dict]]:
    meta: dict = {}
    rows: list[dict] = []
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            line = line.strip()
            if not line:
                continue
            obj = json.loads(line)
            if "_meta" in obj and not rows and not meta:
                meta = obj["_meta"]
            else:
                rows.append(obj)
    return meta, rows


def _write_csv(path: Path, meta: dict, header: list[str], rows: list[list]) -> None:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("# " + json.dumps(meta, sort_keys=True) + "\n")
        fh.write(buf.getvalue())


def _read_csv(path: Path) -> list[dict]:
    with open(path, encoding="utf-8") as fh:
        lines = [l for l in fh if not l.startswith("#")]
    return list(csv.DictReader(lines))


def _fmt(x) -> str:
    if isinstance(x, float):
        return repr(x)
    return "" if x is None else str(x)


def _build_config(stub_ports: bool, sidecar_url: str | None, judge_url: str | None,
                  bins: int) -> MetricConfig:
    config = MetricConfig(bins=bins)
    if stub_ports:
        config.formality_scorer = HashFormalityStub()
        config.narrative_classifier = PositionalNarrativeStub()
        config.judge = RuleBasedJudgeStub()
        return config
    if sidecar_url:
        client = SidecarClient(base_url=sidecar_url)
        config.formality_scorer = SidecarFormalityScorer(client)
        config.narrative_classifier = SidecarNarrativeClassifier(client)
    judge_url = judge_url or os.environ.get("NORMLENS_JUDGE_URL")
    if judge_url:
        config.judge = ChatCompletionJudge(
            url=judge_url, api_key=os.environ.get("NORMLENS_JUDGE_KEY", "")
        )
    return config


def _make_generator(gen_url: str | None):
    gen_url = gen_url or os.environ.get("NORMLENS_GEN_URL")
    if not gen_url:
        raise NormlensError("no generation backend: pass --gen-url or set NORMLENS_GEN_URL")
    if gen_url.startswith("stub:"):
        if gen_url == "stub:echo":
            return EchoGenerator()
        raise NormlensError(f"unknown stub backend {gen_url!r}")
    return ChatCompletionGenerator(url=gen_url, api_key=os.environ.get("NORMLENS_GEN_KEY", ""))


def _load_ingested(path: Path) -> Corpus:
    _, rows = _read_jsonl(path)
    docs = tuple(
        Document(
            id=r["id"], venue=r["venue"], community=r["community"],
            intro_text=r["intro_text"], title=r.get("title", ""),
        )
        for r in rows
    )
    return Corpus(documents=docs)


@click.group()
@click.version_option(__version__)
def main():
    """Writing-norm metrics over research-paper introductions."""


@main.command("ingest")
@click.option("--corpus", "corpus_path", required=True, type=click.Path(exists=True))
@click.option("--venue-map", "venue_map_path", type=click.Path(exists=True), default=None)
@click.option("--out", "out_dir", required=True, type=click.Path())
def cmd_ingest(corpus_path, venue_map_path, out_dir):
    """Load raw records, extract introductions, assign communities."""
    vmap = VenueMap.from_file(venue_map_path) if venue_map_path else VenueMap.default()
    corpus = load_corpus(corpus_path, vmap)
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    config_hash = _hash_params({"cmd": "ingest", "venue_map": sorted(vmap.entries.items())})
    rows = [
        {"id": d.id, "venue": d.venue, "community": d.community,
         "title": d.title, "intro_text": d.intro_text}
        for d in corpus.documents
    ]
    _write_jsonl(out / "corpus.jsonl", _meta(config_hash), rows)
    stats = corpus_stats(corpus)
    _write_csv(out / "corpus_stats.csv", _meta(config_hash), ["community", "documents"],
               [[c, n] for c, n in stats.items()])
    click.echo(json.dumps({"documents": len(corpus), "communities": stats}, sort_keys=True))


@main.command("metrics")
@click.option("--corpus", "corpus_path", required=True, type=click.Path(exists=True),
              help="Ingested corpus.jsonl")
@click.option("--out", "out_dir", required=True, type=click.Path())
@click.option("--npmi-table", "table_path", type=click.Path(exists=True), default=None,
              help="Reuse a previously built NPMI table")
@click.option("--sidecar-url", default=None)
@click.option("--judge-url", default=None)
@click.option("--stub-ports", is_flag=True, help="Use deterministic in-process stub ports")
@click.option("--bins", default=20, show_default=True)
def cmd_metrics(corpus_path, out_dir, table_path, sidecar_url, judge_url, stub_ports, bins):
    """Compute the per-document MetricRecord table."""
    corpus = _load_ingested(Path(corpus_path))
    config = _build_config(stub_ports, sidecar_url, judge_url, bins)
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    if table_path:
        table = NpmiTable.from_file(table_path)
    else:
        table = build_npmi_table(corpus)
        table.to_file(out / "npmi_table.tsv")
    config_hash = config.config_hash()
    rows = []
    warnings = []
    for d in corpus.documents:
        record = compute_record(d.id, d.community, d.intro_text, table, config)
        row = record.to_dict()
        if config.narrative_classifier is not None:
            labels = classify_narrative(prepare(d.intro_text), config.narrative_classifier)
            row["positions"] = narrative_positions(labels)
        rows.append(row)
    if config.formality_scorer is None:
        warnings.append("formality port unconfigured: metric absent")
    if config.judge is None:
        warnings.append("judge port unconfigured: quantitative evidence absent")
    if config.narrative_classifier is None:
        warnings.append("narrative port unconfigured: skew metrics absent")
    _write_jsonl(out / "records.jsonl", _meta(config_hash), rows)
    for w in warnings:
        click.echo(f"warning: {w}", err=True)
    click.echo(json.dumps({"records": len(rows), "config_hash": config_hash}))


@main.command("compare")
@click.option("--records", "records_path", required=True, type=click.Path(exists=True))
@click.option("--out", "out_dir", required=True, type=click.Path())
@click.option("--resamples", default=1000, show_default=True)
@click.option("--level", default=0.95, show_default=True)
@click.option("--seed", default=0, show_default=True)
@click.option("--bins", default=20, show_default=True)
def cmd_compare(records_path, out_dir, resamples, level, seed, bins):
    """Aggregate records into community summaries, norm strength, and densities."""
    meta, rows = _read_jsonl(Path(records_path))
    records = [MetricRecord.from_dict(r) for r in rows]
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    out_meta = _meta(meta.get("config_hash", ""))
    summaries = summarize(records, resamples=resamples, level=level, seed=seed)
    _write_csv(
        out / "summaries.csv", out_meta,
        ["community", "metric", "mean", "std", "ci_low", "ci_high", "n"],
        [[s.community, s.metric, _fmt(s.mean), _fmt(s.std), _fmt(s.ci_low), _fmt(s.ci_high), s.n]
         for s in summaries],
    )
    strength_rows = []
    for metric in SCALAR_METRICS:
        for rank, (community, std) in enumerate(norm_strength(records, metric), 1):
            strength_rows.append([metric, rank, community, _fmt(std)])
    _write_csv(out / "norm_strength.csv", out_meta, ["metric", "rank", "community", "std"],
               strength_rows)

    density_rows = []
    per_community: dict[str, dict[str, list[float]]] = {}
    for row in rows:
        for category, positions in (row.get("positions") or {}).items():
            per_community.setdefault(row["community"], {}).setdefault(category, []).extend(positions)
    for community in sorted(per_community):
        dens = positional_density(per_community[community], bins=bins)
        for category in sorted(dens):
            for b, v in enumerate(dens[category]):
                density_rows.append([community, category, b, _fmt(v)])
    _write_csv(out / "positional_density.csv", out_meta,
               ["community", "category", "bin", "density"], density_rows)
    click.echo(json.dumps({"summaries": len(summaries)}))


@main.command("sample")
@click.option("--corpus", "corpus_path", required=True, type=click.Path(exists=True))
@click.option("--target", required=True)
@click.option("--method", type=click.Choice(["random", "specific"]), default="random",
              show_default=True)
@click.option("--count", default=100, show_default=True)
@click.option("--seed", default=0, show_default=True)
@click.option("--npmi-table", "table_path", type=click.Path(exists=True), default=None)
@click.option("--out", "out_dir", required=True, type=click.Path())
def cmd_sample(corpus_path, target, method, count, seed, table_path, out_dir):
    """Sample adaptation source documents for one target community."""
    corpus = _load_ingested(Path(corpus_path))
    spec = SamplingSpec(method=method, count=count, seed=seed)
    table = NpmiTable.from_file(table_path) if table_path else (
        build_npmi_table(corpus) if method == "specific" else None
    )
    result = sample_sources(corpus, target, spec, table)
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    config_hash = _hash_params({"cmd": "sample", "target": target, "method": method,
                                "count": count, "seed": seed})
    meta = _meta(config_hash)
    meta["target"] = target
    meta["method"] = method
    meta["truncated_communities"] = list(result.truncated_communities)
    rows = [
        {"id": d.id, "venue": d.venue, "community": d.community,
         "title": d.title, "intro_text": d.intro_text}
        for d in result.documents
    ]
    _write_jsonl(out / "sample.jsonl", meta, rows)
    if result.truncated_communities:
        click.echo(
            f"warning: communities smaller than count, took all: "
            f"{', '.join(result.truncated_communities)}", err=True)
    click.echo(json.dumps({"sampled": len(rows), "target": target, "method": method}))


@main.command("adapt")
@click.option("--sample", "sample_path", required=True, type=click.Path(exists=True))
@click.option("--model", default="stub-echo", show_default=True)
@click.option("--gen-url", default=None, help="Generation endpoint or stub:echo")
@click.option("--temperature", default=0.7, show_default=True)
@click.option("--top-p", default=1.0, show_default=True)
@click.option("--max-tokens", default=4096, show_default=True)
@click.option("--samples-per-prompt", default=5, show_default=True)
@click.option("--out", "out_dir", required=True, type=click.Path())
def cmd_adapt(sample_path, model, gen_url, temperature, top_p, max_tokens,
              samples_per_prompt, out_dir):
    """Generate adapted rewrites for every sampled source document."""
    meta, rows = _read_jsonl(Path(sample_path))
    target = meta.get("target")
    method = meta.get("method", "random")
    if not target:
        raise NormlensError(f"{sample_path}: missing target in sample metadata")
    client = _make_generator(gen_url)
    gen = GenerationSpec(model=model, temperature=temperature, top_p=top_p,
                         max_tokens=max_tokens, samples_per_prompt=samples_per_prompt)
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    config_hash = _hash_params({"cmd": "adapt", "model": model, "gen": vars(gen),
                                "backend": type(client).__name__})
    out_rows = []
    for r in rows:
        doc = Document(id=r["id"], venue=r["venue"], community=r["community"],
                       intro_text=r["intro_text"], title=r.get("title", ""))
        for a in adapt_text(doc, target, gen, client, method=method):
            out_rows.append({
                "doc_id": a.doc_id, "source": a.source, "target": a.target,
                "method": a.method, "model": a.model, "sample_index": a.sample_index,
                "text": a.text, "prompt_hash": a.prompt_hash,
                "prompt_version": a.prompt_version, "truncated": a.truncated,
                "source_text": r["intro_text"],
            })
    _write_jsonl(out / "adaptations.jsonl", _meta(config_hash), out_rows)
    click.echo(json.dumps({"adaptations": len(out_rows), "target": target, "model": model}))


@main.command("eval")
@click.option("--adaptations", "adapt_path", required=True, type=click.Path(exists=True))
@click.option("--corpus", "corpus_path", required=True, type=click.Path(exists=True))
@click.option("--npmi-table", "table_path", type=click.Path(exists=True), default=None)
@click.option("--summaries", "summaries_path", required=True, type=click.Path(exists=True))
@click.option("--sidecar-url", default=None)
@click.option("--judge-url", default=None)
@click.option("--stub-ports", is_flag=True)
@click.option("--bins", default=20, show_default=True)
@click.option("--out", "out_dir", required=True, type=click.Path())
def cmd_eval(adapt_path, corpus_path, table_path, summaries_path, sidecar_url,
             judge_url, stub_ports, bins, out_dir):
    """Score adaptations before/after and build the delta table."""
    corpus = _load_ingested(Path(corpus_path))
    table = NpmiTable.from_file(table_path) if table_path else build_npmi_table(corpus)
    config = _build_config(stub_ports, sidecar_url, judge_url, bins)
    config_hash = config.config_hash()
    _, arows = _read_jsonl(Path(adapt_path))

    summary_rows = _read_csv(Path(summaries_path))
    targets = sorted({r["target"] for r in arows})
    baselines: list[BaselinePair] = []
    parsed = [
        # BaselinePair recomputes direction from the two means
        {"community": r["community"], "metric": r["metric"],
         "mean": float(r["mean"]), "n": int(r["n"])}
        for r in summary_rows
    ]
    from .stats import CommunitySummary

    summaries = [
        CommunitySummary(community=p["community"], metric=p["metric"], mean=p["mean"],
                         std=0.0, ci_low=p["mean"], ci_high=p["mean"], n=p["n"])
        for p in parsed
    ]
    for target in targets:
        for metric in SCALAR_METRICS:
            if any(s.metric == metric for s in summaries):
                baselines.append(baseline_pair(summaries, metric, target))

    # target-community mean framing vector, for the pairwise similarity row
    target_vectors = {}
    for target in targets:
        vecs = [
            compute_record(d.id, d.community, d.intro_text, table, config).value_vector
            for d in corpus.documents if d.community == target
        ]
        if vecs:
            target_vectors[target] = mean_vector(vecs)

    results = []
    before_cache: dict[tuple[str, str], MetricRecord] = {}
    from .adapt import Adaptation

    for r in arows:
        key = (r["doc_id"], r["target"])
        if key not in before_cache:
            before_cache[key] = compute_record(
                r["doc_id"], r["target"], r["source_text"], table, config
            )
        before = before_cache[key]
        after = compute_record(r["doc_id"], r["target"], r["text"], table, config)
        tvec = target_vectors.get(r["target"])
        adaptation = Adaptation(
            doc_id=r["doc_id"], source=r["source"], target=r["target"],
            method=r["method"], model=r["model"], sample_index=r["sample_index"],
            text=r["text"], prompt_hash=r["prompt_hash"],
            prompt_version=r.get("prompt_version", ""), truncated=r.get("truncated", False),
        )
        results.append(
            AdaptationResult(
                adaptation=adaptation, before=before, after=after,
                config_hash=config_hash,
                framing_before=framing_similarity(before.value_vector, tvec) if tvec else None,
                framing_after=framing_similarity(after.value_vector, tvec) if tvec else None,
            )
        )
    cells = evaluate_adaptations(results, baselines)
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    _write_csv(
        out / "deltas.csv", _meta(config_hash),
        ["target", "model", "method", "metric", "mean_delta", "direction", "verdict", "n"],
        [[c.target, c.model, c.method, c.metric, _fmt(c.mean_delta),
          c.direction or "", c.verdict, c.n] for c in cells],
    )
    click.echo(json.dumps({"cells": len(cells), "config_hash": config_hash}))


@main.command("report")
@click.option("--summaries", "summaries_path", required=True, type=click.Path(exists=True))
@click.option("--deltas", "deltas_path", required=True, type=click.Path(exists=True))
@click.option("--out", "out_dir", required=True, type=click.Path())
def cmd_report(summaries_path, deltas_path, out_dir):
    """Emit long-format report data plus a human-readable wide table."""
    summary_rows = _read_csv(Path(summaries_path))
    delta_rows = _read_csv(Path(deltas_path))
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    meta = _meta(_hash_params({"cmd": "report"}))

    long_rows = []
    for r in delta_rows:
        scale = _REPORT_SCALE.get(r["metric"], 1.0)
        long_rows.append([
            r["target"], r["model"], r["method"], r["metric"],
            _fmt(float(r["mean_delta"]) * scale), r["direction"], r["verdict"], r["n"],
        ])
    _write_csv(out / "report_long.csv", meta,
               ["target", "model", "method", "metric", "delta", "direction", "verdict", "n"],
               long_rows)

    lines = []
    targets = sorted({r["target"] for r in delta_rows})
    for target in targets:
        lines.append(f"== target: {target} ==")
        in_means = {
            r["metric"]: float(r["mean"]) for r in summary_rows if r["community"] == target
        }
        for r in delta_rows:
            if r["target"] != target:
                continue
            scale = _REPORT_SCALE.get(r["metric"], 1.0)
            arrow = _ARROW.get(r["direction"] or None, "=")
            flag = {"match": "OK", "mismatch": "X", "no-change": "-", "undefined": "?"}[r["verdict"]]
            base = in_means.get(r["metric"])
            base_s = f"{base * scale:8.2f}" if base is not None else "    base"
            lines.append(
                f"{r['metric']:<18} {arrow} {base_s} | {r['model']:<12} {r['method']:<8} "
                f"d={float(r['mean_delta']) * scale:+8.2f} [{flag}]"
            )
    (out / "report_wide.txt").write_text(
        "# " + json.dumps(meta, sort_keys=True) + "\n" + "\n".join(lines) + "\n", "utf-8"
    )
    click.echo(json.dumps({"rows": len(long_rows)}))


def run():
    try:
        main(standalone_mode=False)
    except NormlensError as e:
        click.echo(json.dumps(e.to_record()), err=True)
        sys.exit(1)
    except click.ClickException as e:
        e.show()
        sys.exit(e.exit_code)
    except click.exceptions.Abort:
        sys.exit(130)


if __name__ == "__main__":
    run()
