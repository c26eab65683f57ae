#!/usr/bin/env python
"""Verify that bianchi_padic is properly installed."""
import sys

try:
    import bianchi_padic
    print(f"✓ bianchi_padic version {bianchi_padic.__version__} installed")

    # Check subpackages
    from bianchi_padic import arith, dist, heckechar, lfun, lift, mellin, quadfield, symbols  # noqa: F401
    print("✓ All subpackages importable")

    # Check the smallest stage end to end
    from bianchi_padic import PipelineConfig, run
    report = run("field-info", PipelineConfig())
    field = report.sections["field"]
    print(f"✓ field-info: D={field['D']} w={field['w']} h={field['class_number']} p {field['splitting']['kind']}")

    # Check packaged data files
    from bianchi_padic.reporting import SCHEMA_PATH, TEMPLATE_DIR
    assert SCHEMA_PATH.exists() and (TEMPLATE_DIR / "report.txt.j2").exists()
    print("✓ Schemas and templates present")

    print("\n✅ Installation verified successfully!")
    sys.exit(0)
except ImportError as e:
    print(f"❌ Import error: {e}")
    sys.exit(1)
except Exception as e:
    print(f"❌ Unexpected error: {e}")
    sys.exit(1)
