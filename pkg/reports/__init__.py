from reports.emitter import CSV_COLUMNS, RunReport, emit_report

__all__ = ['CSV_COLUMNS', 'RunReport', 'emit_report']
