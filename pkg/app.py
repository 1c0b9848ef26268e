import json
import os
import shlex
import sys
import uuid

import pandas as pd
import streamlit as st

from Cli.main import run_command
from Commands.report import Report
from Core.Enums.command import CommandType
from Core.Factory.command import CommandFactory
from Core.Utils.error_handler import exception_handler
from Core.Utils.helper import Helper
from Core.Utils.logger import Logger
from Stdlib.registry import THEORY_NAMES, stdlib_theory

logger = Logger.get_logger()

sys.stdout.reconfigure(encoding="utf-8")
sys.stderr.reconfigure(encoding="utf-8")

UPLOAD_DIR = "Data/Theories"


class App:
    def __init__(self):
        self.file = None

    @exception_handler(show_ui=True)
    def main(self) -> None:
        st.set_page_config(page_title="Theory Explorer", layout="centered")
        logger.info("🖥️ Explorer started")

        if "uploaded" not in st.session_state:
            st.session_state.uploaded = None

        self.header()
        self.sidebar()
        self.run_command_ui()

    @exception_handler(show_ui=True)
    def header(self) -> None:
        st.title("🧮 Theory Explorer")
        st.write("Pick a stdlib theory file or upload your own, then run a kernel command on it.")

    @exception_handler(show_ui=True)
    def sidebar(self) -> None:
        with st.sidebar:
            st.title("📚 Theory File")
            source = st.radio("Source", ["stdlib", "upload"], horizontal=True)

            if source == "stdlib":
                self.file = st.selectbox("Choose a stdlib file", Helper.stdlib_files())
            else:
                uploaded = st.file_uploader("Select your .th file", type=["th"])
                # Keep one copy per session across reruns
                if uploaded and st.session_state.uploaded is None:
                    os.makedirs(UPLOAD_DIR, exist_ok=True)
                    stem = "".join(c for c in uploaded.name.removesuffix(".th").lower() if c.isalnum() or c in "_-") or "theory"
                    path = os.path.join(UPLOAD_DIR, f"{stem}_{uuid.uuid4().hex}.th")
                    Helper.save_theory_file(path, uploaded)
                    st.session_state.uploaded = path
                    st.success("✅ File uploaded successfully!")
                self.file = st.session_state.uploaded

            name = st.selectbox("Browse a stdlib theory", THEORY_NAMES)
            self.symbol_table(name)

    @exception_handler(show_ui=True)
    def symbol_table(self, name: str) -> None:
        theory = stdlib_theory(name).payload
        rows = [
            {"symbol": f.name, "arguments": ", ".join(str(s) for s in f.arg_sorts), "result": str(f.result_sort)}
            for f in theory.own_funs
        ]
        with st.expander(f"🔤 {name}: {len(rows)} symbols, {len(theory.own_axioms)} axioms"):
            st.dataframe(pd.DataFrame(rows, columns=["symbol", "arguments", "result"]))

    @exception_handler(show_ui=True)
    def run_command_ui(self) -> None:
        st.markdown("### ⚙️ Run a Command")
        commands = [c for c in CommandFactory.commands() if c not in {CommandType.STDLIB.value, CommandType.COLIMIT.value}]
        command = st.selectbox("Command", commands)
        extra = st.text_input("Arguments", placeholder="--telescope point --fuel 20")

        if st.button("🚀 Run"):
            if not self.file:
                st.warning("⚠️ Please choose or upload a theory file.")
                return
            argv = [command, self.file, *shlex.split(extra)]
            with st.spinner("⏳ Checking...."):
                code, report = run_command(argv)
            self.show_report(code, report)

    @exception_handler(show_ui=True)
    def show_report(self, code: int, report: Report) -> None:
        badge = {0: st.success, 1: st.error}.get(code, st.warning)
        badge(f"{report.command}: {report.verdict.value} (exit {code})")

        details = report.details
        if "text" in details:
            st.code(details["text"])
        flat = pd.json_normalize({k: v for k, v in details.items() if k != "text"}, max_level=1)
        if not flat.empty:
            st.subheader("📊 Details")
            st.dataframe(flat.T.rename(columns={0: "value"}).astype(str))

        st.subheader("🧾 Report")
        st.code(json.dumps(report.to_dict(include_timing=True), indent=2, sort_keys=True), language="json")


if __name__ == "__main__":
    App().main()
