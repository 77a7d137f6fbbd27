"""
VerificationResult entity: pass/fail outcome of a theorem or claim sweep.
"""

from typing import List, Optional

import pandas as pd


class VerificationResult:
    """Represents the outcome of one verification run.

    Attributes:
        __case (str): Case identifier (e.g. k_n2, claims)
        __passed (bool): True when every checked row passed
        __table (pd.DataFrame): One row per checked instance, with a 'passed' column
        __counterexample (Optional[str]): graph6 of the first failing graph
        __message (str): Summary line
        __notes (List[str]): Extra remarks (exploratory rows, mode justification)
    """

    def __init__(self, case: str, passed: bool, table: pd.DataFrame,
                 counterexample: Optional[str] = None, message: str = "",
                 notes: Optional[List[str]] = None):
        self.__case = case
        self.__passed = passed
        self.__table = table
        self.__counterexample = counterexample
        self.__message = message
        self.__notes = list(notes or [])

    def get_case(self) -> str:
        return self.__case

    def is_passed(self) -> bool:
        return self.__passed

    def get_table(self) -> pd.DataFrame:
        return self.__table

    def get_counterexample(self) -> Optional[str]:
        return self.__counterexample

    def get_message(self) -> str:
        return self.__message

    def get_notes(self) -> List[str]:
        return list(self.__notes)

    def failed_rows(self) -> pd.DataFrame:
        if self.__table.empty or "passed" not in self.__table.columns:
            return self.__table
        return self.__table[self.__table["passed"] == False]  # noqa: E712

    def __str__(self) -> str:
        status = "PASSED" if self.__passed else "FAILED"
        return f"{self.__case}: {status} ({len(self.__table)} rows) {self.__message}".rstrip()

    def __repr__(self) -> str:
        return f"VerificationResult(case='{self.__case}', passed={self.__passed}, rows={len(self.__table)})"
