"""Write sample morphism, directive and window files for trying the CLI"""
import sys
from pathlib import Path

from sadiclab.schemas.examples import SturmianSpec
from sadiclab.schemas.word import TwoSidedWindow
from sadiclab.services.examples import (
    SIGMA,
    STURMIAN_SIGMA,
    STURMIAN_TAU,
    TAU,
    counterexample_directive,
    sturmian_directive,
)
from sadiclab.services.sadic import limit_prefix
from sadiclab.utils.formats import write_morphism, write_window


def write_samples(target: Path, window: int = 5000, origin: int = 1296):
    """
    Create the sample directory: the four morphisms, three directive files
    and two-sided windows of the counterexample and the golden sequence.

    Args:
        target: Directory to write into
        window: Symbols generated for each window file
        origin: Index of position 0 inside each window
    """
    # IDEMPOTENCY: never overwrite an existing sample set
    if (target / "golden.window").exists():
        print(f"\n{'='*60}")
        print(f"✅ Samples already present in {target}, skipping")
        print(f"{'='*60}\n")
        return {"directory": str(target), "status": "already_exists"}

    target.mkdir(parents=True, exist_ok=True)

    write_morphism(SIGMA, target / "sigma.morph", comment="sigma: a -> acb, b -> bab, c -> cbc")
    write_morphism(TAU, target / "tau.morph", comment="tau: a -> abc, b -> acb, c -> aac")
    write_morphism(STURMIAN_TAU, target / "stau.morph", comment="Sturmian tau: 0 -> 0, 1 -> 10")
    write_morphism(STURMIAN_SIGMA, target / "ssigma.morph", comment="Sturmian sigma: 0 -> 01, 1 -> 1")

    directives = {
        "counterexample.directive": "# sigma tau sigma^2 tau sigma^3 tau ...\npattern: counterexample\n",
        "golden.directive": "# sigma tau sigma tau ...\npattern: sturmian 0,1 cycle\n",
        "periodic.directive": "# (sigma tau)^inf\nseed: a\nuse sigma.morph\nuse tau.morph\nperiodic: yes\n",
        "head-then-golden.directive": "# tau tau, then the golden pattern\nseed: 0\nuse stau.morph\nuse stau.morph\npattern: golden\n",
    }
    for name, text in directives.items():
        (target / name).write_text(text, encoding="utf-8")

    windows = {
        "counterexample.window": counterexample_directive(),
        "golden.window": sturmian_directive(SturmianSpec(quotients=(0, 1))),
    }
    for name, d in windows.items():
        prefix = limit_prefix(d, window + origin)
        write_window(TwoSidedWindow.from_prefix(prefix.word, origin=origin), target / name)

    print(f"\n{'='*60}")
    print(f"✅ Sample inputs written to {target}")
    print(f"{'='*60}")
    print(f"   Morphisms: 4")
    print(f"   Directives: {len(directives)}")
    print(f"   Windows: {len(windows)} ({window} symbols right of position 0, {origin} left)")
    print(f"\n   💡 Try:")
    print(f"   sadiclab gen --directive {target / 'periodic.directive'} --len 27")
    print(f"   sadiclab returns --input {target / 'golden.window'} --u 0 --v 1 --check-oracle")
    print(f"   sadiclab derive --input {target / 'golden.window'} --K 2 --levels 2")
    print(f"{'='*60}\n")

    return {
        "directory": str(target),
        "morphisms": 4,
        "directives": len(directives),
        "windows": len(windows)
    }


if __name__ == "__main__":
    write_samples(Path(sys.argv[1]) if len(sys.argv) > 1 else Path("samples"))
