"""Rendering reports and tensors for the terminal."""
from typing import TYPE_CHECKING

from skeinlab.algebra.tensor import SparseTensor
from skeinlab.algebra.utils import format_scalar
from skeinlab.io.load import frame_records, write_json

if TYPE_CHECKING:
    import pandas as pd


def render_frame(frame: "pd.DataFrame", as_json: bool = False) -> None:
    if as_json:
        write_json(frame_records(frame))
        return
    shown = frame.copy()
    if "passed" in shown.columns:
        shown["passed"] = shown["passed"].map(lambda ok: "✅" if ok else "❌")
    print(shown.to_string(index=False))
    if "passed" in frame.columns:
        failed = int((~frame["passed"].astype(bool)).sum())
        print(f"\n{len(frame) - failed}/{len(frame)} checks passed")


def render_tensor(t: SparseTensor, as_json: bool = False) -> None:
    if as_json:
        write_json(t.to_dict())
        return
    if t.rank == 0:
        print(format_scalar(t.value))
        return
    for key, value in t.items():
        print(" ".join(map(str, key)), format_scalar(value))
