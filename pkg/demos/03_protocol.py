"""Run the full verification protocol and read off the residual floors."""

from padic_twoterm import report
from padic_twoterm.engine import ProtocolConfig, run_protocol

for p in (5, 7):
    r = run_protocol(ProtocolConfig(p, digits=100))
    print(report.to_text(r))

# the table in CSV form, as `padic-twoterm table -p 5,7 -N 100` prints it
rows = [run_protocol(ProtocolConfig(p, digits=100)) for p in (5, 7)]
print(report.to_csv(rows))
