"""Command line: ``fuzzygir ingest|index|query|explain``.

Exit codes: 0 success, 1 usage error, 2 data or integrity error.
"""
import argparse
import sys
from pathlib import Path

from .config import Config
from .corpus import Corpus
from .errors import DataError, QueryError
from .fuzzy.grid import FusionMode
from .gazetteer import load_gazetteer
from .geojson import emit_geojson
from .retrieval import Engine

EXIT_OK, EXIT_USAGE, EXIT_DATA = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # argparse exits with 2 on bad arguments; 2 is reserved for data errors here
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(f"{self.prog}: error: {message}")


def build_parser():
    p = _Parser(prog="fuzzygir", description="Fuzzy geographic information retrieval.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("ingest", help="tokenize a corpus into a sealed store")
    s.add_argument("--corpus", required=True, help="directory of .txt files or a JSONL file of {id, text}")
    s.add_argument("--out", required=True, help="store directory to write")

    s = sub.add_parser("index", help="extract mentions and build the spatial index")
    s.add_argument("--store", required=True)
    s.add_argument("--gazetteer", required=True, help="gazetteer TSV")
    s.add_argument("--config", help="directory of JSON overrides (defaults are built in)")
    s.add_argument("--out", required=True, help="index directory to write")

    for name, help_text in (("query", "rank documents and locate the event"),
                            ("explain", "show per-component scores and rule traces")):
        s = sub.add_parser(name, help=help_text)
        s.add_argument("--index", required=True)
        s.add_argument("text", help="query text, e.g. \"flood near Marina Beach\"")
        s.add_argument("--top", type=int, metavar="K")
        s.add_argument("--fusion", choices=[m.value for m in FusionMode])
        if name == "query":
            s.add_argument("--emit", metavar="PATH", help="write the resolved location as GeoJSON")
            s.add_argument("--raster", action="store_true", help="include possibility cells in the GeoJSON")
            s.add_argument("--explain", action="store_true", help="print the explanation instead of JSON")
    return p


def cmd_ingest(args):
    corpus = Corpus.from_path(args.corpus).seal()
    corpus.save(args.out)
    print(f"ingested {corpus.n_docs} documents into {args.out}")


def cmd_index(args):
    config = Config.load(args.config)
    gaz = load_gazetteer(args.gazetteer, radius_km=config.gazetteer["default_radius_km"],
                         default_importance=config.gazetteer["default_importance"])
    if not Path(args.store).is_dir():
        raise FileNotFoundError(f"store not found: {args.store}")
    corpus = Corpus.load(args.store)
    engine = Engine.build(corpus, gaz, config)
    engine.save(args.out, gazetteer_source=args.gazetteer)
    n_mentions = sum(len(ms) for ms in engine.index.mentions.values())
    print(f"indexed {corpus.n_docs} documents, {n_mentions} spatial mentions, "
          f"{len(engine.index.level1)} spatial terms into {args.out}")


def explain_text(report):
    plan = report.plan
    lines = [f"query: {plan.text}",
             f"event terms: {' '.join(plan.event_terms) or '-'}",
             f"spatial part: {plan.key or '-'} (level {plan.level.label})",
             f"fusion: {plan.fusion.value}, top {plan.top_k}", ""]
    if not report.judgments:
        lines.append("no documents matched")
    for rank, j in enumerate(report.judgments, 1):
        lines.append(f"{rank}. {j.doc_id}  final={j.final_score:.4f}  fuzzy={j.fuzzy_relevance:.4f}  "
                     f"thematic={j.thematic_cosine:.4f}")
        lines.append(f"   swf_norm={j.swf_norm:.4f}  gran_match={j.gran_match:.4f}  "
                     f"expr_overlap={j.expr_overlap:.4f}")
        for rule, act in j.rule_trace:
            if act > 0:
                lines.append(f"   {act:.4f}  {rule}")
    lines.append("")
    if report.location is not None:
        loc = report.location
        cert = loc.certainty
        lines.append(f"resolved point: {loc.point[0]:.6f}, {loc.point[1]:.6f} "
                     f"(max possibility {cert['max_possibility']:.4f})")
        lines.append(f"most certain cells: {cert['most_certain']['cells']}, "
                     f"least certain cells: {cert['least_certain']['cells']}")
    else:
        lines.append(f"no location: {report.location_error}")
    return "\n".join(lines)


def cmd_query(args, explain=False):
    if args.top is not None and args.top < 1:
        raise UsageError("--top must be at least 1")
    if not Path(args.index).is_dir():
        raise UsageError(f"index directory not found: {args.index}")
    engine = Engine.load(args.index)
    report = engine.query(args.text, top_k=args.top, fusion=args.fusion)
    if explain or getattr(args, "explain", False):
        print(explain_text(report))
    else:
        print(report.dumps())
    if getattr(args, "emit", None):
        if report.location is None:
            print(f"fuzzygir: no GeoJSON written: {report.location_error}", file=sys.stderr)
        else:
            emit_geojson(report.location, args.emit, query=args.text, raster=args.raster)


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if args.command == "ingest":
            cmd_ingest(args)
        elif args.command == "index":
            cmd_index(args)
        else:
            cmd_query(args, explain=args.command == "explain")
    except SystemExit as exc:  # --help
        return exc.code or EXIT_OK
    except (UsageError, QueryError, FileNotFoundError) as exc:
        print(f"fuzzygir: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (DataError, OSError) as exc:
        print(f"fuzzygir: data error: {exc}", file=sys.stderr)
        return EXIT_DATA
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
