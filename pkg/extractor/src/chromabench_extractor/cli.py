"""extract-features: embed an image directory or a prompts file into a CFS file."""

from __future__ import annotations

import argparse
import sys
from typing import Sequence

from chromabench import ChromabenchError

from .errors import ExtractorError
from .extract import extract_clip, extract_inception
from .job import DEFAULT_CLIP_VARIANT, ExtractJob, ExtractModel

__all__ = ["main"]


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="extract-features",
        description="Export Inception-v3 pool3 features or CLIP embeddings to a CFS file.",
    )
    parser.add_argument(
        "--model",
        required=True,
        choices=[m.value for m in ExtractModel],
        help="which network embeds the inputs",
    )
    parser.add_argument("--in", dest="input", required=True,
                        help="image directory, or prompts file for clip-text")
    parser.add_argument("--out", dest="output", required=True, help="CFS file to write")
    parser.add_argument("--batch", type=int, default=32, help="inference batch size")
    parser.add_argument("--device", default="cpu", help="torch device string")
    parser.add_argument("--clip-variant", default=DEFAULT_CLIP_VARIANT,
                        help="CLIP checkpoint name; recorded in the CFS manifest")
    parser.add_argument("--strict", action="store_true",
                        help="exit nonzero if any input had to be skipped")
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    model = ExtractModel(args.model)
    try:
        job = ExtractJob(
            input_path=args.input,
            model=model,
            output_path=args.output,
            batch_size=args.batch,
            device=args.device,
            clip_variant=args.clip_variant,
        )
        if model is ExtractModel.INCEPTION_POOL3:
            result = extract_inception(job)
        else:
            result = extract_clip(job)
    except (ExtractorError, ChromabenchError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    for entry in result.skipped:
        print(f"warning: skipped {entry}", file=sys.stderr)
    print(f"wrote {result.n} x {result.dim} features ({result.extractor}) to {result.path}")
    if args.strict and result.skipped:
        return 1
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
