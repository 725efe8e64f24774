"""
Verdict records, the batch report document, and their text/table/JSON forms.
"""
import logging
from datetime import datetime
from pathlib import Path
from typing import Dict, Iterable, List, Optional

import pandas as pd
from pydantic import BaseModel, Field

from algebra.slgroup import enumerate_relations
from config.settings import settings
from splitting.criteria import evaluate_criteria
from splitting.params import GenParams, build_generators
from splitting.search import SearchMode, SplitVerdict

logger = logging.getLogger(__name__)


class WitnessParams(BaseModel):
    a: int
    b: int
    c: int
    a1: int
    b1: int
    c1: int
    u: int
    v: int
    u1: int
    v1: int


class DimensionRecord(BaseModel):
    """One dimension of a report."""
    n: int
    splits: bool
    witness: Optional[WitnessParams] = None
    candidates_checked: int = 0
    millis: Optional[int] = None
    witness_count: Optional[int] = None
    witness_matrices: Dict[str, str] = Field(default_factory=dict)
    diagnostics: Dict[str, bool] = Field(default_factory=dict)
    notes: List[str] = Field(default_factory=list)


class ReportDocument(BaseModel):
    version: str
    generated_at: Optional[str] = None
    mode: str
    dims: List[DimensionRecord] = Field(default_factory=list)


def witness_matrices(p: GenParams) -> Dict[str, str]:
    """T and R rendered with explicit moduli."""
    t_lift, r_lift = build_generators(p)
    return {"T": str(t_lift), "R": str(r_lift)}


class ReportManager:
    """Builds report documents from verdicts and renders them."""

    def __init__(self):
        logger.info("ReportManager.__init__ called")
        self.report_history: List[ReportDocument] = []
        logger.info("ReportManager.__init__ completed")

    def record_from_verdict(self, verdict: SplitVerdict, include_timing: bool = True) -> DimensionRecord:
        logger.info("ReportManager.record_from_verdict called for n=%d", verdict.dim)
        record = DimensionRecord(
            n=verdict.dim,
            splits=verdict.splits,
            candidates_checked=verdict.candidates_checked,
            millis=verdict.millis if include_timing else None,
            witness_count=verdict.witness_count,
            notes=list(verdict.notes),
        )
        if verdict.witness is not None:
            record.witness = WitnessParams(**verdict.witness.as_dict())
            record.witness_matrices = witness_matrices(verdict.witness)
            record.diagnostics = evaluate_criteria(verdict.witness)
        logger.info("ReportManager.record_from_verdict completed for n=%d", verdict.dim)
        return record

    def build_document(
        self,
        verdicts: Iterable[SplitVerdict],
        mode: SearchMode,
        include_timestamp: bool = True,
    ) -> ReportDocument:
        """
        Assemble a document; without timestamp neither generated_at nor any
        timing is filled in, so repeated runs serialize identically.
        """
        logger.info("ReportManager.build_document called with mode=%s", mode.value)
        document = ReportDocument(
            version=settings.TOOL_VERSION,
            generated_at=datetime.now().isoformat(timespec="seconds") if include_timestamp else None,
            mode=mode.value,
            dims=[self.record_from_verdict(v, include_timing=include_timestamp) for v in verdicts],
        )
        self.report_history.append(document)
        logger.info("ReportManager.build_document completed with %d dimensions", len(document.dims))
        return document

    def format_verdict(self, verdict: SplitVerdict) -> str:
        """Human-readable verdict block."""
        lines = [
            f"{'=' * 60}",
            f"N = {verdict.dim}",
            f"splits: {'yes' if verdict.splits else 'no'}",
        ]
        if verdict.witness is not None:
            params = " ".join(f"{name}={value}" for name, value in verdict.witness.as_dict().items())
            lines.append(f"witness: {params}")
            for name, rendered in witness_matrices(verdict.witness).items():
                lines.append(f"  {name} = {rendered}")
        for note in verdict.notes:
            lines.append(f"note: {note}")
        lines.append(f"{'=' * 60}")
        return "\n".join(lines)

    def format_search(self, verdict: SplitVerdict) -> str:
        lines = []
        if verdict.witness is None:
            lines.append(f"no witness among {verdict.candidates_checked} candidates")
        else:
            params = " ".join(f"{name}={value}" for name, value in verdict.witness.as_dict().items())
            lines.append(f"witness: {params}")
            for name, rendered in witness_matrices(verdict.witness).items():
                lines.append(f"  {name} = {rendered}")
        if verdict.witness_count is not None:
            lines.append(f"witnesses: {verdict.witness_count} of {verdict.candidates_checked} candidates")
        return "\n".join(lines)

    def summary_table(self, document: ReportDocument) -> pd.DataFrame:
        rows = [
            {
                "N": record.n,
                "splits": "yes" if record.splits else "no",
                "witness": (
                    ",".join(str(x) for x in record.witness.model_dump().values())
                    if record.witness is not None else ""
                ),
                "candidates_checked": record.candidates_checked,
                "millis": record.millis,
            }
            for record in document.dims
        ]
        return pd.DataFrame(rows, columns=["N", "splits", "witness", "candidates_checked", "millis"])

    def relations_table(self, n: int) -> pd.DataFrame:
        rows = [
            {"family": instance.family.value, "k": instance.k, "l": instance.l, "relation": instance.label()}
            for instance in enumerate_relations(n)
        ]
        return pd.DataFrame(rows, columns=["family", "k", "l", "relation"])

    def write_json(self, document: ReportDocument, path: Path) -> None:
        logger.info("ReportManager.write_json called with path=%s", path)
        if not path.parent.exists():
            logger.warning("Report directory %s does not exist", path.parent)
        path.write_text(document.model_dump_json(indent=2) + "\n", encoding="utf-8")
        logger.info("ReportManager.write_json completed")

    def write_csv(self, document: ReportDocument, path: Path) -> None:
        logger.info("ReportManager.write_csv called with path=%s", path)
        if not path.parent.exists():
            logger.warning("Report directory %s does not exist", path.parent)
        self.summary_table(document).to_csv(path, index=False)
        logger.info("ReportManager.write_csv completed")

    @staticmethod
    def load_json(path: Path) -> ReportDocument:
        return ReportDocument.model_validate_json(path.read_text(encoding="utf-8"))


# Global report manager instance
report_manager = ReportManager()
