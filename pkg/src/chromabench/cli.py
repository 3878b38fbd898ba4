"""Command-line entry point.

Subcommands: eval (run a configured benchmark), extract (pixel-statistics
features to a CFS file), synth (deterministic synthetic image sets), sweep
(chroma-scaling FID/CF curve), clean-captions (caption artifact removal).
Report paths get a rendered figure next to the delimited output unless
figures are turned off.
"""

from __future__ import annotations

import argparse
import dataclasses
import sys
from pathlib import Path

from .errors import ChromabenchError, InvalidArgument
from .features import FeatureSet, PixelStatsExtractor, save_cfs
from .harness import (
    EvalConfig,
    SynthMode,
    clean_caption,
    run_benchmark,
    saturation_sweep,
    synth_set,
)
from .imageio import list_images, load_image
from .report import render_markdown, write_report, write_sweep


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="chromabench",
        description="Colorization evaluation: FID, hue-invariant FID, colorfulness, and friends.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_eval = sub.add_parser("eval", help="run a configured benchmark and write the report")
    p_eval.add_argument("--config", required=True, help="JSON config file")
    p_eval.add_argument("--strict", action="store_true", help="fail on any warning or error")
    p_eval.add_argument(
        "--luminance-replace",
        action="store_true",
        help="replace predicted luminance with the ground-truth gray before PSNR/SSIM",
    )
    p_eval.add_argument("--threads", type=int, default=None, help="worker threads")
    p_eval.add_argument("--no-figures", action="store_true", help="skip the report figure")

    p_extract = sub.add_parser("extract", help="extract features from a directory to a CFS file")
    p_extract.add_argument("--extractor", default="pixel-stats", choices=["pixel-stats"])
    p_extract.add_argument("--in", dest="input", required=True, help="image directory")
    p_extract.add_argument("--out", dest="output", required=True, help="output .cfs path")
    p_extract.add_argument("--threads", type=int, default=1)

    p_synth = sub.add_parser("synth", help="write a deterministic synthetic image set")
    p_synth.add_argument("--seed", type=int, required=True)
    p_synth.add_argument("--n", type=int, required=True)
    p_synth.add_argument("--size", default="64x64", help="WxH, e.g. 64x64")
    p_synth.add_argument("--mode", default="smooth", choices=[m.value for m in SynthMode])
    p_synth.add_argument("--out", dest="output", required=True, help="output directory")

    p_sweep = sub.add_parser("sweep", help="chroma-scale a set and chart FID against colorfulness")
    p_sweep.add_argument("--in", dest="input", required=True, help="image directory")
    p_sweep.add_argument("--alphas", required=True, help="comma-separated scale factors")
    p_sweep.add_argument("--out", dest="output", required=True, help="output .csv path")
    p_sweep.add_argument("--threads", type=int, default=1)
    p_sweep.add_argument("--no-figure", action="store_true", help="skip the curve figure")

    p_clean = sub.add_parser("clean-captions", help="strip caption artifacts from a prompts file")
    p_clean.add_argument("--in", dest="input", required=True, help="prompts file (id<TAB>caption)")
    p_clean.add_argument("--out", dest="output", required=True, help="cleaned prompts file")

    return parser


def _cmd_eval(args: argparse.Namespace) -> int:
    cfg = EvalConfig.from_file(args.config)
    overrides = {}
    if args.strict:
        overrides["strict"] = True
    if args.luminance_replace:
        overrides["luminance_replace"] = True
    if args.threads is not None:
        overrides["threads"] = args.threads
    if overrides:
        cfg = dataclasses.replace(cfg, **overrides)
        cfg.validate()

    report = run_benchmark(cfg)
    print(render_markdown(report), end="")
    if cfg.output_path is not None:
        written = write_report(
            report, cfg.output_path, cfg.output_format, figure=not args.no_figures
        )
        for path in written:
            print(f"wrote {path}", file=sys.stderr)
    return 0


def _cmd_extract(args: argparse.Namespace) -> int:
    extractor = PixelStatsExtractor()
    files = list_images(args.input)
    if not files:
        raise InvalidArgument(f"no images in {args.input}")
    rows = [(p.stem, extractor.extract(load_image(p))) for p in files]
    features = FeatureSet.from_rows(rows, extractor=extractor.name, version=extractor.version)
    save_cfs(features, args.output)
    print(f"wrote {features.n} x {features.dim} features to {args.output}", file=sys.stderr)
    return 0


def _parse_size(text: str) -> tuple[int, int]:
    parts = text.lower().split("x")
    if len(parts) != 2:
        raise InvalidArgument(f"size must look like 64x64, got {text!r}")
    try:
        return int(parts[0]), int(parts[1])
    except ValueError as e:
        raise InvalidArgument(f"size must look like 64x64, got {text!r}") from e


def _cmd_synth(args: argparse.Namespace) -> int:
    paths = synth_set(
        seed=args.seed,
        n=args.n,
        size=_parse_size(args.size),
        mode=SynthMode(args.mode),
        out_dir=args.output,
    )
    print(f"wrote {len(paths)} images to {args.output}", file=sys.stderr)
    return 0


def _cmd_sweep(args: argparse.Namespace) -> int:
    try:
        alphas = [float(a) for a in args.alphas.split(",") if a.strip()]
    except ValueError as e:
        raise InvalidArgument(f"bad --alphas value: {args.alphas!r}") from e
    points = saturation_sweep(args.input, alphas, threads=args.threads)
    written = write_sweep(points, args.output, figure=not args.no_figure)
    for path in written:
        print(f"wrote {path}", file=sys.stderr)
    return 0


def _cmd_clean_captions(args: argparse.Namespace) -> int:
    text = Path(args.input).read_text(encoding="utf-8")
    out_lines = []
    for line in text.splitlines():
        if "\t" in line:
            pid, caption = line.split("\t", 1)
            out_lines.append(f"{pid}\t{clean_caption(caption)}")
        else:
            out_lines.append(clean_caption(line))
    Path(args.output).write_text("\n".join(out_lines) + "\n", encoding="utf-8")
    print(f"wrote {len(out_lines)} lines to {args.output}", file=sys.stderr)
    return 0


_COMMANDS = {
    "eval": _cmd_eval,
    "extract": _cmd_extract,
    "synth": _cmd_synth,
    "sweep": _cmd_sweep,
    "clean-captions": _cmd_clean_captions,
}


def main(argv: list[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except ChromabenchError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
