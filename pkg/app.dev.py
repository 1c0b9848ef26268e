from Cli.main import run_command
from Commands.report import emit_report
from Core.Enums.command import OutputFormat
from Core.Utils.logger import Logger

logger = Logger.get_logger()


class App:
    """Scripted run of the command registry without the UI."""

    def __init__(self):
        self.runs = [
            ["check", "stdlib/id_full.th"],
            ["normalize", "stdlib/t_pi.th", "--term", "app(A, wk(A, A), lam(A, v0(A)), a)", "--telescope", "fun_arg"],
            ["separated", "stdlib/t_pi1.th", "--bound", "2"],
            ["morita", "stdlib/contr_unit.th", "--morphism", "contr_to_unit", "--mode", "cond1", "--depth", "4"],
            ["stdlib", "unit"],
        ]

    def test(self):
        for argv in self.runs:
            code, report = run_command(argv)
            logger.info("🧪 %s -> exit %d", " ".join(argv), code)
            print(emit_report(report, OutputFormat.TEXT).decode("utf-8"))


if __name__ == "__main__":
    App().test()
