import argparse
import json
import logging
import sys

from dotenv import load_dotenv

from credit_core import KParam
from reports import (
    METHODS,
    cmd_compare,
    cmd_curves,
    cmd_lorenz,
    cmd_perturb,
    cmd_score,
    cmd_table,
    cmd_validate,
    parse_action,
)
from utils.config import load_config, load_role_scheme
from utils.corpus_io import ingest
from utils.errors import CountingError, CorpusIOError, DomainError
from utils.logging_config import setup_logging
from utils.report_table import FORMATS

logger = logging.getLogger("main")

EXIT_OK = 0
EXIT_USAGE = 2


def parse_numbers(text):
    values = []
    for token in str(text).split(","):
        token = token.strip()
        if not token:
            continue
        try:
            values.append(float(token) if any(c in token for c in ".eE") else int(token))
        except ValueError:
            raise DomainError(f"not a number: {token!r}") from None
    if not values:
        raise DomainError(f"no numbers in {text!r}")
    return values


def parse_k_list(text):
    return [KParam.parse(token) for token in str(text).split(",") if token.strip()]


def resolve_k(args, config):
    return KParam.parse(args.k if args.k is not None else config.get("default_k", 2))


def resolve_scheme(args, config):
    if not args.role_scheme:
        return None
    return load_role_scheme(args.role_scheme, config)


def run_score(args, config):
    corpus = ingest(args.corpus, args.corpus_format)
    k = None if args.method == "classical" else resolve_k(args, config)
    return cmd_score(corpus, args.institute, args.method, k, resolve_scheme(args, config))


def run_table(args, config):
    return cmd_table(args.which, config)


def run_curves(args, config):
    curves = config.get("curves", {})
    n_authors = args.n_authors if args.n_authors is not None else curves.get("n_authors", 10)
    grid_size = args.grid_size if args.grid_size is not None else curves.get("grid_size", 100)
    k_max = args.k_max if args.k_max is not None else curves.get("k_max", 100)
    return cmd_curves(n_authors, grid_size=grid_size, k_max=k_max)


def run_compare(args, config):
    corpus = ingest(args.corpus, args.corpus_format)
    if args.k_values:
        k_values = parse_k_list(args.k_values)
    elif args.k is not None:
        k_values = [KParam.parse(args.k)]
    else:
        k_values = [KParam.parse(k) for k in config.get("compare_k_values", [1, 2, 3, "inf"])]
    return cmd_compare(corpus, args.institute, k_values, resolve_scheme(args, config))


def run_perturb(args, config):
    return cmd_perturb(parse_numbers(args.counts), parse_action(args.action), resolve_k(args, config))


def run_lorenz(args, config):
    if args.corpus:
        if not args.publication:
            raise DomainError("--publication is required with --corpus")
        corpus = ingest(args.corpus, args.corpus_format)
        values = _publication_counts(corpus, args.publication)
        other = _publication_counts(corpus, args.other_publication) if args.other_publication else None
    elif args.values:
        values = parse_numbers(args.values)
        other = parse_numbers(args.other) if args.other else None
    else:
        raise DomainError("give --values or --corpus with --publication")
    return cmd_lorenz(values, other)


def _publication_counts(corpus, publication_id):
    try:
        publication = corpus.get(publication_id)
    except KeyError:
        raise DomainError(f"publication {publication_id!r} not found in corpus") from None
    return list(publication.counts().values())


def run_validate(args, config):
    return cmd_validate(ingest(args.corpus, args.corpus_format))


def global_options():
    """Flags accepted before or after the subcommand."""
    parent = argparse.ArgumentParser(add_help=False)
    parent.add_argument("--format", choices=FORMATS, default=argparse.SUPPRESS, help="Output format")
    parent.add_argument("--precision", type=int, default=argparse.SUPPRESS, help="Decimals for every numeric cell")
    parent.add_argument("--k", default=argparse.SUPPRESS, help="Parameter k >= 1, or 'inf'")
    parent.add_argument("--role-scheme", default=argparse.SUPPRESS, help="Role-weight YAML file or configured scheme name")
    parent.add_argument("--config", default=argparse.SUPPRESS, help="Alternative config.yaml")
    parent.add_argument("--log-level", default=argparse.SUPPRESS, help="DEBUG, INFO, WARNING or ERROR")
    parent.add_argument(
        "--corpus-format", choices=("structured", "delimited"), default=argparse.SUPPRESS,
        help="Corpus format when the file suffix does not tell",
    )
    return parent


def build_parser():
    parent = global_options()
    parser = argparse.ArgumentParser(
        description="Modified fractional counting of publication credit", parents=[parent]
    )
    subparsers = parser.add_subparsers(dest="command", required=True)

    score = subparsers.add_parser("score", parents=[parent], help="Score one institute over a corpus")
    score.add_argument("corpus", help="Corpus file (.json or .csv)")
    score.add_argument("--institute", required=True, help="Target institute id")
    score.add_argument("--method", choices=METHODS, default="mfc", help="Counting method")
    score.set_defaults(handler=run_score)

    table = subparsers.add_parser("table", parents=[parent], help="Recompute a reference table")
    table.add_argument("which", type=int, choices=(1, 2, 3), help="Reference table number")
    table.set_defaults(handler=run_table)

    curves = subparsers.add_parser("curves", parents=[parent], help="Sample MFC_k and G_lambda for plotting")
    curves.add_argument("--n-authors", type=int, help="Number of authors N")
    curves.add_argument("--grid-size", type=int, help="Number of samples per curve")
    curves.add_argument("--k-max", type=float, help="Upper end of the k grid")
    curves.set_defaults(handler=run_curves)

    compare = subparsers.add_parser("compare", parents=[parent], help="mfc, cmfc and pmfc side by side")
    compare.add_argument("corpus", help="Corpus file (.json or .csv)")
    compare.add_argument("--institute", action="append", required=True, help="Target institute id (repeatable)")
    compare.add_argument("--k-values", help="Comma-separated k values, e.g. 1,2,3,inf")
    compare.set_defaults(handler=run_compare)

    perturb = subparsers.add_parser("perturb", parents=[parent], help="Effect of adding authors or entities")
    perturb.add_argument("--counts", required=True, help="Comma-separated author counts per entity")
    perturb.add_argument("--action", required=True, help="add_entity:x, add_authors:i:x (i from 1) or uniform:a")
    perturb.set_defaults(handler=run_perturb)

    lorenz = subparsers.add_parser("lorenz", parents=[parent], help="Lorenz curve and majorization")
    lorenz.add_argument("--values", help="Comma-separated non-negative values")
    lorenz.add_argument("--other", help="Second array to compare against")
    lorenz.add_argument("--corpus", help="Corpus file, with --publication")
    lorenz.add_argument("--publication", help="Publication whose institute counts are used")
    lorenz.add_argument("--other-publication", help="Second publication to compare against")
    lorenz.set_defaults(handler=run_lorenz)

    validate = subparsers.add_parser("validate", parents=[parent], help="Check a corpus file")
    validate.add_argument("corpus", help="Corpus file (.json or .csv)")
    validate.set_defaults(handler=run_validate)
    return parser


def main(argv=None):
    load_dotenv()
    parser = build_parser()
    args = parser.parse_args(argv)
    for name in ("format", "precision", "k", "role_scheme", "config", "log_level", "corpus_format"):
        if not hasattr(args, name):
            setattr(args, name, None)
    fmt = args.format or "plain"

    try:
        config = load_config(args.config)
    except (OSError, ValueError) as e:
        print(f"❌ {e}", file=sys.stderr)
        return EXIT_USAGE
    setup_logging(args.log_level or config.get("log_level", "INFO"))

    try:
        report = args.handler(args, config)
    except CountingError as e:
        logger.debug("command failed", exc_info=True)
        if fmt == "structured":
            sys.stderr.write(json.dumps(e.to_dict(), ensure_ascii=False) + "\n")
        else:
            print(f"❌ {e}", file=sys.stderr)
        return e.exit_code
    except FileNotFoundError as e:
        print(f"❌ {e}", file=sys.stderr)
        return CorpusIOError.exit_code
    except ValueError as e:
        print(f"❌ {e}", file=sys.stderr)
        return EXIT_USAGE

    sys.stdout.write(report.render(fmt, args.precision, default_precision=int(config.get("precision", 2))))
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
