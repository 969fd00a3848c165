"""Writing results: JSON payloads for tensors, reports and evaluation results."""
import json
import sys
from pathlib import Path
from typing import TYPE_CHECKING, Any, List, Optional, Union

from skeinlab.algebra.model import ModelContext, orbit_basis
from skeinlab.algebra.tensor import SparseTensor

if TYPE_CHECKING:
    import pandas as pd


def write_json(payload: Any, out: Optional[Union[str, Path]] = None) -> None:
    text = json.dumps(payload, indent=2, sort_keys=True, ensure_ascii=False)
    if out is None:
        sys.stdout.write(text + "\n")
        return
    Path(out).write_text(text + "\n", encoding="utf-8")
    print(f"wrote {out}", file=sys.stderr)


def read_tensor(path: Union[str, Path]) -> SparseTensor:
    return SparseTensor.from_dict(json.loads(Path(path).read_text(encoding="utf-8")))


def frame_records(frame: "pd.DataFrame") -> List[dict]:
    """DataFrame rows as plain JSON-safe dicts."""
    return json.loads(frame.to_json(orient="records", force_ascii=False))


def basis_payload(ctx: ModelContext, n: int) -> dict:
    return {
        "group": ctx.name,
        "rank": n,
        "basis": [
            {
                "representative": list(b.representative),
                "orbit_size": b.orbit_size,
                "tensor": b.tensor.to_dict(),
            }
            for b in orbit_basis(ctx, n)
        ],
    }
